#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "harvest/correlators.hpp"
#include "harvest/scenario.hpp"

namespace harvest {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string required;
  double seconds = 0.0;
};

// Module invariants; a few seconds in total.
std::vector<CheckResult> fast_checks();

struct GoldenCase {
  std::string name;
  std::function<cplx(Backend)> compute;
};

std::vector<GoldenCase> golden_cases();
std::string default_golden_path();
// Adaptive result within 1e-4 and oracle within 1e-8 of each stored value.
std::vector<CheckResult> golden_checks(const std::string& path);

inline constexpr int kCriteria = 10;
CheckResult acceptance_criterion(int n);

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

// fast: module invariants. full: plus golden regressions and every acceptance criterion.
VerifyReport verify_suite(bool full, const std::string& golden_path, std::ostream* progress);

void print_check(std::ostream& out, const CheckResult& c);

}  // namespace harvest
