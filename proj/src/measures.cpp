#include "harvest/measures.hpp"

#include <cmath>
#include <numbers>

namespace harvest {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double concurrence(double p_a, double p_b, cplx m) {
  return 2.0 * std::max(0.0, std::abs(m) - std::sqrt(p_a * p_b));
}

MutualInformation mutual_information(double p_a, double p_b, cplx l) {
  MutualInformation mi;
  const double root = std::sqrt((p_a - p_b) * (p_a - p_b) + 4.0 * std::norm(l));
  mi.l_plus = 0.5 * (p_a + p_b + root);
  mi.l_minus = 0.5 * (p_a + p_b - root);
  if (mi.l_minus < 0.0) {
    mi.l_minus = 0.0;
    mi.clamped = true;
  }
  mi.value = xlogx(mi.l_plus) + xlogx(mi.l_minus) - xlogx(p_a) - xlogx(p_b);
  return mi;
}

double planck_rate(double omega, double beta) {
  const double x = 2.0 * std::numbers::pi * omega / beta;
  if (std::abs(x) < 1e-8) return beta / (4.0 * std::numbers::pi * std::numbers::pi);
  return omega / (2.0 * std::numbers::pi * std::expm1(x));
}

HarvestReport harvest_report(const DensityMatrixElements& d) {
  HarvestReport r;
  r.p_d = d.p_a;
  r.p_err = d.p_err;
  r.abs_m = std::abs(d.m);
  r.m_err = d.m_err;
  r.concurrence = concurrence(d.p_a, d.p_b, d.m);
  r.concurrence_err = r.concurrence > 0.0 ? 2.0 * (d.m_err + d.p_err) : 0.0;
  if (r.concurrence == 0.0) r.flags.push_back("ZERO_CONCURRENCE");
  if (d.l_available) {
    r.abs_l = std::abs(d.l);
    r.l_err = d.l_err;
    const auto mi = mutual_information(d.p_a, d.p_b, d.l);
    r.mutual_information = mi.value;
    r.l_plus = mi.l_plus;
    r.l_minus = mi.l_minus;
    if (mi.clamped) r.flags.push_back("EIGENVALUE_CLAMPED");
  } else {
    r.abs_l = r.l_err = r.mutual_information = r.l_plus = r.l_minus = std::nan("");
  }
  for (const auto& f : d.flags) r.flags.push_back(f);
  r.elements = d;
  return r;
}

HarvestReport compute(const Scenario& scenario) {
  return harvest_report(assemble(validate_scenario(scenario)));
}

}  // namespace harvest
