#include <cstdio>

#include "harvest/verify.hpp"

namespace harvest {

bool VerifyReport::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void print_check(std::ostream& out, const CheckResult& c) {
  char t[32];
  std::snprintf(t, sizeof t, "%.2f", c.seconds);
  out << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.name << "\n"
      << "     measured: " << c.measured << "\n"
      << "     required: " << c.required << "  [" << t << " s]\n";
}

VerifyReport verify_suite(bool full, const std::string& golden_path, std::ostream* progress) {
  VerifyReport report;
  auto add = [&](const CheckResult& c) {
    report.checks.push_back(c);
    if (progress) print_check(*progress, c);
  };
  for (const auto& c : fast_checks()) add(c);
  if (full) {
    for (const auto& c : golden_checks(golden_path)) add(c);
    for (int n = 1; n <= kCriteria; ++n) add(acceptance_criterion(n));
  }
  return report;
}

}  // namespace harvest
