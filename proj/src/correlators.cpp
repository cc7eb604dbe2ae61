#include "harvest/correlators.hpp"

#include <cmath>
#include <numbers>

namespace harvest {

namespace {

constexpr double kPi = std::numbers::pi;
// Past this |x| the exponential forms take over from sinh/cosh.
constexpr double kLargeArgument = 20.0;

// sinh(x - i e) = sinh x cos e - i cosh x sin e
cplx sinh_shifted(double x, double e) {
  return {std::sinh(x) * std::cos(e), -std::cosh(x) * std::sin(e)};
}

// 1/sinh^2(x - i e), overflow-safe.
cplx inv_sinh2(double x, double e) {
  if (std::abs(x) <= kLargeArgument) {
    const cplx sh = sinh_shifted(x, e);
    return 1.0 / (sh * sh);
  }
  // 1/sinh^2 z = 4 e^{-2z} / (1 - e^{-2z})^2 for Re z > 0; even in z.
  const double sign = x > 0.0 ? 1.0 : -1.0;
  const cplx z(sign * x, -sign * e);
  const cplx q = std::exp(-2.0 * z);
  return 4.0 * q / ((1.0 - q) * (1.0 - q));
}

// sinh z = m e^{x}, with x = 0 for moderate arguments.
struct ScaledSinh {
  cplx m;
  cplx x;
};

ScaledSinh scaled_sinh(cplx z) {
  if (std::abs(z.real()) <= kLargeArgument) return {std::sinh(z), 0.0};
  if (z.real() > 0.0) return {0.5 * (1.0 - std::exp(-2.0 * z)), z};
  return {-0.5 * (1.0 - std::exp(2.0 * z)), -z};
}

}  // namespace

cplx eval_ds_local(double s, double beta, double eps) {
  return -beta * beta / (16.0 * kPi * kPi) * inv_sinh2(beta * s / 2.0, eps);
}

cplx eval_ds_offset(double s, double beta, double L, double eps) {
  const double x = beta * s / 2.0;
  const double q = beta * L / 2.0;
  const double pre = -beta * beta / (16.0 * kPi * kPi);
  if (std::abs(x) <= kLargeArgument) {
    const cplx sh = sinh_shifted(x, eps);
    return pre / (sh * sh - q * q);
  }
  const cplx u = inv_sinh2(x, eps);
  return pre * u / (1.0 - q * q * u);
}

cplx eval_th_offset(double s, double kappa, double L, double eps) {
  if (std::abs(kappa * L) < kSmallSeparation) return eval_ds_local(s, kappa, eps);
  // coth a + coth b = sinh(a + b) / (sinh a sinh b); the sum form cancels in the tails.
  const cplx sp(s, -eps);
  const auto n = scaled_sinh(kappa * L);
  const auto a = scaled_sinh(kappa * (L - sp) / 2.0);
  const auto b = scaled_sinh(kappa * (L + sp) / 2.0);
  return kappa / (16.0 * kPi * kPi * L) * n.m / (a.m * b.m) * std::exp(n.x - a.x - b.x);
}

cplx evaluate(const CorrelatorSpec& spec, double s) {
  const CorrelatorSpec c = normalized(spec);
  switch (c.family) {
    case Family::DeSitterLocal:
    case Family::ThermalLocal:
      return eval_ds_local(s, c.rate, c.epsilon);
    case Family::DeSitterOffset:
      return eval_ds_offset(s, c.rate, c.separation, c.epsilon);
    case Family::ThermalOffset:
      return eval_th_offset(s, c.rate, c.separation, c.epsilon);
  }
  return {};
}

bool is_local(Family family) {
  return family == Family::DeSitterLocal || family == Family::ThermalLocal;
}

CorrelatorSpec normalized(const CorrelatorSpec& spec) {
  CorrelatorSpec out = spec;
  if (spec.family == Family::DeSitterOffset && spec.separation == 0.0) {
    out.family = Family::DeSitterLocal;
  } else if (spec.family == Family::ThermalOffset &&
             std::abs(spec.rate * spec.separation) < kSmallSeparation) {
    out.family = Family::ThermalLocal;
  }
  if (is_local(out.family)) out.separation = 0.0;
  return out;
}

std::vector<double> pole_locations(const CorrelatorSpec& spec) {
  const CorrelatorSpec c = normalized(spec);
  switch (c.family) {
    case Family::DeSitterLocal:
    case Family::ThermalLocal:
      return {0.0};
    case Family::DeSitterOffset: {
      const double p = 2.0 / c.rate * std::asinh(c.rate * std::abs(c.separation) / 2.0);
      return {-p, p};
    }
    case Family::ThermalOffset:
      return {-std::abs(c.separation), std::abs(c.separation)};
  }
  return {};
}

double pole_offset(const CorrelatorSpec& spec) {
  // beta s/2 - i eps vanishes at s = 2 i eps / beta; the thermal offset form shifts s itself.
  if (normalized(spec).family == Family::ThermalOffset) return spec.epsilon;
  return 2.0 * spec.epsilon / spec.rate;
}

}  // namespace harvest
