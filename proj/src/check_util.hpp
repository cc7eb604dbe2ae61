#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "harvest/verify.hpp"

namespace harvest::detail {

inline double rel(double a, double b) {
  const double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

inline double rel(cplx a, cplx b) {
  const double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string fixed(double v, int digits = 5) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs body, which fills passed/measured; failures from exceptions become failed checks.
template <class F>
CheckResult run_check(std::string id, std::string name, std::string required, F&& body) {
  CheckResult r{std::move(id), std::move(name), false, "", std::move(required), 0.0};
  Timer t;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.measured = std::string("exception: ") + e.what();
  }
  r.seconds = t.seconds();
  return r;
}

}  // namespace harvest::detail
