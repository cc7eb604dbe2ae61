#include <numbers>
#include <random>

#include "check_util.hpp"
#include "harvest/builders.hpp"
#include "harvest/measures.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/sweep.hpp"

namespace harvest {

using detail::rel;
using detail::run_check;
using detail::sci;

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult hermiticity() {
  return run_check("inv.hermiticity", "W(-s) = conj W(s) for every family", "rel 1e-12",
                   [](CheckResult& r) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> s(-20.0, 20.0), rate(0.05, 8.0), L(0.0, 6.0),
        eps(1e-5, 1e-1);
    double worst = 0.0;
    for (int i = 0; i < 4000; ++i) {
      const CorrelatorSpec c{static_cast<Family>(i % 4), rate(rng), L(rng), eps(rng)};
      const double x = s(rng);
      worst = std::max(worst, rel(evaluate(c, -x), std::conj(evaluate(c, x))));
    }
    r.passed = worst <= 1e-12;
    r.measured = sci(worst);
  });
}

CheckResult offset_reductions() {
  return run_check("inv.offset_local", "offset -> local: de Sitter L=0 exact, thermal small L",
                   "exact / rel 1e-4", [](CheckResult& r) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> s(-10.0, 10.0), rate(0.05, 8.0), eps(1e-4, 1e-2);
    bool exact = true;
    for (int i = 0; i < 1000; ++i) {
      const double x = s(rng), b = rate(rng), e = eps(rng);
      exact = exact && evaluate({Family::DeSitterOffset, b, 0.0, e}, x) == eval_ds_local(x, b, e);
    }
    // Integral level, just above the switch so the coth form is exercised.
    QuadratureConfig q;
    IntegralSpec off;
    off.correlator = {Family::ThermalOffset, 0.2, 2e-3 / 0.2, 0.0};
    off.omega = 0.1;
    IntegralSpec loc = off;
    loc.correlator = {Family::ThermalLocal, 0.2, 0.0, 0.0};
    const double d = rel(integrate_extrapolated(off, q).value, integrate_extrapolated(loc, q).value);
    r.passed = exact && d < 1e-4;
    r.measured = std::string(exact ? "de Sitter exact" : "de Sitter MISMATCH") + ", thermal " + sci(d);
  });
}

CheckResult reality() {
  return run_check("inv.reality", "Im P_D negligible (spatial, phased, temporal, thermal)",
                   "rel 1e-6", [](CheckResult& r) {
    double worst = 0.0;
    for (const auto& s : {de_sitter_distances(0.1, 5.0, 2.0, 1.36, 0.05),
                          de_sitter_distances(0.2, 2.5, 1.0, 3.53, 1.0, PastFuture{3.0}),
                          thermal(5.0, 2.5, 1.0, 0.1, PhasedSpatial{1.0})}) {
      const cplx p = transition_probability(validate_scenario(s)).value;
      worst = std::max(worst, std::abs(p.imag()) / std::abs(p));
    }
    r.passed = worst < 1e-6;
    r.measured = sci(worst);
  });
}

double worst_triple(const Scenario& a, const Scenario& b) {
  const auto x = assemble(validate_scenario(a));
  const auto y = assemble(validate_scenario(b));
  return std::max({rel(x.p_a, y.p_a), rel(std::abs(x.m), std::abs(y.m)),
                   rel(std::abs(x.l), std::abs(y.l))});
}

CheckResult degeneracies() {
  return run_check("inv.degeneracy", "L_S = 0 and tau0 = 0 reproduce the classical triple",
                   "rel 1e-8", [](CheckResult& r) {
    const auto cl_ds = de_sitter_distances(0.1, 5.0, 0.0, 1.36, 0.05, ClassicalSingle{});
    const auto cl_th = thermal(2.0, 0.0, 1.0, 0.1, ClassicalSingle{});
    double worst = 0.0;
    worst = std::max(worst, worst_triple(with_kind(cl_ds, Spatial{}), cl_ds));
    worst = std::max(worst, worst_triple(with_kind(cl_th, Spatial{}), cl_th));
    worst = std::max(worst, worst_triple(with_kind(cl_ds, PastFuture{0.0}), cl_ds));
    worst = std::max(worst, worst_triple(with_kind(cl_ds, CauseEffect{0.0}), cl_ds));
    worst = std::max(worst, worst_triple(with_kind(cl_th, PhasedSpatial{0.0}), cl_th));
    r.passed = worst < 1e-8;
    r.measured = sci(worst);
  });
}

CheckResult lambda_scaling() {
  return run_check("inv.lambda2", "lambda = 2 scales P_D, M, L by exactly 4", "exact",
                   [](CheckResult& r) {
    auto s = thermal(1.0, 2.5, 1.0, 0.3);
    const auto a = assemble(validate_scenario(s));
    s.detectors.lambda = 2.0;
    const auto b = assemble(validate_scenario(s));
    r.passed = b.p_a == 4.0 * a.p_a && b.m == 4.0 * a.m && b.l == 4.0 * a.l;
    r.measured = "ratios " + sci(b.p_a / a.p_a) + ", " + sci(std::abs(b.m) / std::abs(a.m)) +
                 ", " + sci(std::abs(b.l) / std::abs(a.l));
  });
}

CheckResult mi_properties() {
  return run_check("inv.mutual_information", "I >= 0 on random inputs and I(|l| = 0) = 0",
                   "exact", [](CheckResult& r) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> p(0.0, 0.5), f(0.0, 1.0), ph(0.0, 2.0 * kPi);
    double most_negative = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double pa = p(rng), pb = p(rng);
      const double mag = f(rng) * std::sqrt(pa * pb);
      most_negative = std::min(most_negative, mutual_information(pa, pb, std::polar(mag, ph(rng))).value);
    }
    const double zero = mutual_information(0.1, 0.1, 0.0).value;
    r.passed = most_negative >= 0.0 && zero == 0.0;
    r.measured = "min I " + sci(most_negative) + ", I(l=0) " + sci(zero);
  });
}

CheckResult full_line_reality() {
  return run_check("inv.full_line_real", "full-line Hermitian integrals are real",
                   "|Im| <= 1e-8 |value|", [](CheckResult& r) {
    QuadratureConfig q;
    double worst = 0.0;
    for (int fam = 0; fam < 4; ++fam) {
      IntegralSpec s;
      s.correlator = {static_cast<Family>(fam), 0.7, 1.5, 0.0};
      s.omega = 0.8;
      const cplx v = integrate_extrapolated(s, q).value;
      worst = std::max(worst, std::abs(v.imag()) / std::abs(v));
    }
    r.passed = worst <= 1e-8;
    r.measured = sci(worst);
  });
}

CheckResult half_line_consistency() {
  return run_check("inv.half_line", "full-line L equals 2 Re of the half-line integral",
                   "rel 1e-6", [](CheckResult& r) {
    QuadratureConfig q;
    double worst = 0.0;
    for (auto fam : {Family::DeSitterOffset, Family::ThermalOffset}) {
      IntegralSpec full;
      full.correlator = {fam, 0.5, 1.36, 0.0};
      full.omega = 0.4;
      IntegralSpec half = full;
      half.domain = Domain::HalfLine;
      const cplx a = integrate_extrapolated(full, q).value;
      const cplx b = 2.0 * integrate_extrapolated(half, q).value.real();
      worst = std::max(worst, rel(a, b));
    }
    r.passed = worst < 1e-6;
    r.measured = sci(worst);
  });
}

CheckResult serial_parallel() {
  return run_check("inv.parallel", "parallel sweep rows identical to the serial reference",
                   "bitwise", [](CheckResult& r) {
    RunConfig cfg;
    cfg.base = thermal(1.0, 2.5, 1.0, 0.1);
    cfg.axes = {Axis{Param::kappa, 0.5, 4.0, 3, Spacing::Log}, Axis{Param::L_S, 0.0, 2.5, 2, Spacing::Linear}};
    cfg.baseline = true;
    const auto a = run_sweep_serial(cfg);
    const auto b = run_sweep(cfg, 4);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].report.has_value() == b[i].report.has_value() && a[i].index == b[i].index;
      if (same && a[i].report) {
        same = a[i].report->p_d == b[i].report->p_d && a[i].report->elements.m == b[i].report->elements.m &&
               a[i].report->elements.l == b[i].report->elements.l &&
               a[i].baseline->concurrence == b[i].baseline->concurrence;
      }
    }
    r.passed = same;
    r.measured = same ? "identical" : "differs";
  });
}

CheckResult overlap_limit() {
  return run_check("inv.overlap", "inner term at L_L2 = 0 equals P_C / 4", "rel 1e-12",
                   [](CheckResult& r) {
    const auto s = thermal(0.2, 2.5, 2.5, -6.0);
    const auto l = nonlocal_term(validate_scenario(s));
    const auto pc = transition_probability(validate_scenario(with_kind(s, ClassicalSingle{})));
    cplx inner;
    for (const auto& t : l.terms) {
      if (t.name == "inner") inner = t.value;
    }
    const double d = rel(inner, pc.value / 4.0);
    r.passed = d < 1e-12;
    r.measured = sci(d);
  });
}

}  // namespace

std::vector<CheckResult> fast_checks() {
  return {hermiticity(), offset_reductions(), reality(),     degeneracies(),
          lambda_scaling(), mi_properties(),  full_line_reality(), half_line_consistency(),
          overlap_limit(), serial_parallel()};
}

}  // namespace harvest
