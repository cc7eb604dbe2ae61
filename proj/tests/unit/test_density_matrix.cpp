#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "harvest/builders.hpp"
#include "harvest/density_matrix.hpp"
#include "oracles.hpp"

using namespace harvest;
using doctest::Approx;
using oracle::Kind;
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

DensityMatrixElements run(const Scenario& s) { return assemble(validate_scenario(s)); }

cplx term(const Element& e, const std::string& name) {
  for (const auto& t : e.terms)
    if (t.name == name) return t.value;
  FAIL("missing term " << name);
  return {};
}

bool flagged(const DensityMatrixElements& d, const std::string& f) {
  return std::find(d.flags.begin(), d.flags.end(), f) != d.flags.end();
}

// Full-line integrals from the spectral representation; half-line from the contour.
cplx full(Kind k, double rate, double L, double om, double tau0 = 0.0) {
  return oracle::spectral_integral(k, rate, L, om, 1.0, tau0);
}
cplx half(Kind k, double rate, double L, double tau0 = 0.0) {
  return oracle::contour_integral(k, rate, L, 0.0, 1.0, tau0, true);
}

}  // namespace

TEST_CASE("spatial elements against independent oracles (thermal)") {
  const double k = 5.0, LS = 2.5, LM = 1.0, om = 0.1;
  const auto d = run(thermal(k, LS, LM, om));
  const double P = kSqrtPi / 2 * (full(Kind::ThermalLocal, k, 0, om) + full(Kind::ThermalOffset, k, LS, om)).real();
  CHECK(d.p_a == Approx(P).epsilon(1e-6));
  CHECK(d.p_b == d.p_a);
  const cplx M = -2 * kSqrtPi * std::exp(-om * om) * half(Kind::ThermalOffset, k, LM);
  CHECK(rel(d.m, M) < 1e-5);
  const cplx L = kSqrtPi / 2 *
                 (full(Kind::ThermalOffset, k, LM, om) +
                  0.5 * (full(Kind::ThermalOffset, k, LS + LM, om) + full(Kind::ThermalOffset, k, LS - LM, om)));
  CHECK(rel(d.l, L) < 1e-5);
}

TEST_CASE("spatial elements against independent oracles (de Sitter angles)") {
  const double l = 0.1, R = 4.0, tS = kPi / 2, tM = kPi / 6, om = 0.3;
  const double b = derive_beta(l, R);
  const auto d = run(de_sitter_angles(l, R, tS, tM, om));
  const double LS = chord_distance(R, tS), LM = chord_distance(R, tM);
  const double P = kSqrtPi / 2 * (full(Kind::DeSitterLocal, b, 0, om) + full(Kind::DeSitterOffset, b, LS, om)).real();
  CHECK(d.p_a == Approx(P).epsilon(1e-6));
  const cplx M = -2 * kSqrtPi * std::exp(-om * om) * half(Kind::DeSitterOffset, b, LM);
  CHECK(rel(d.m, M) < 1e-5);
  const double outer = chord_distance(R, tS + tM), inner = chord_distance(R, tS - tM);
  const cplx L = kSqrtPi / 2 *
                 (full(Kind::DeSitterOffset, b, LM, om) +
                  0.5 * (full(Kind::DeSitterOffset, b, outer, om) + full(Kind::DeSitterOffset, b, inner, om)));
  CHECK(rel(d.l, L) < 1e-5);
}

TEST_CASE("temporal elements against independent oracles") {
  const double l = 0.2, R = 2.5, LM = 3.53, om = 1.0, tau0 = 2.0;
  const double b = derive_beta(l, R);
  // The cosh oracle envelope is the averaged pair of shifted Gaussians, i.e. damping included.
  const cplx loc = full(Kind::DeSitterLocal, b, 0, om), loc_cosh = full(Kind::DeSitterLocal, b, 0, om, tau0);
  for (const SuperpositionKind& kind : {SuperpositionKind{PastFuture{tau0}}, SuperpositionKind{CauseEffect{tau0}}}) {
    const auto d = run(de_sitter_distances(l, R, 1.0, LM, om, kind));
    CHECK(d.p_a == Approx((kSqrtPi / 2 * (loc + loc_cosh)).real()).epsilon(1e-6));
    const cplx L = kSqrtPi / 2 * (full(Kind::DeSitterOffset, b, LM, om) + full(Kind::DeSitterOffset, b, LM, om, tau0));
    CHECK(rel(d.l, L) < 1e-5);
  }
  const auto pf = run(de_sitter_distances(l, R, 1.0, LM, om, PastFuture{tau0}));
  const cplx Mpf = -2 * kSqrtPi * std::exp(-om * om) * std::cos(tau0 * om / 2) * half(Kind::DeSitterOffset, b, LM);
  CHECK(rel(pf.m, Mpf) < 1e-5);
  const auto ce = run(de_sitter_distances(l, R, 1.0, LM, om, CauseEffect{tau0}));
  const cplx Mce = 2 * kSqrtPi * std::exp(-om * om) * half(Kind::DeSitterOffset, b, LM, tau0);
  CHECK(rel(ce.m, Mce) < 1e-5);
}

TEST_CASE("past-future phase convention") {
  CHECK(kPastFuturePhase == PastFuturePhase::Printed);
  CHECK(past_future_phase(2.0, 1.0) == Approx(std::cos(1.0)));
  CHECK(past_future_phase(2.0, 1.0, PastFuturePhase::Rederived) == Approx(std::cos(4.0)));
}

TEST_CASE("past-future |M| vanishes at the zeros of the printed phase") {
  const double om = 1.0, tau0 = kPi / om;
  const auto d = run(de_sitter_distances(0.2, 2.5, 1.0, 3.53, om, PastFuture{tau0}));
  CHECK(std::abs(d.m) <= d.m_err + 1e-15);
  const auto off = run(de_sitter_distances(0.2, 2.5, 1.0, 3.53, om, PastFuture{tau0 + 0.5}));
  CHECK(std::abs(off.m) > 100 * (off.m_err + 1e-15));
}

TEST_CASE("relative phase") {
  const auto base = run(thermal(1.0, 2.0, 1.0, 0.2));
  const auto zero = run(thermal(1.0, 2.0, 1.0, 0.2, PhasedSpatial{0.0}));
  CHECK(zero.p_a == base.p_a);
  CHECK(zero.m == base.m);
  CHECK(zero.l == base.l);
  const auto pi = run(thermal(1.0, 2.0, 1.0, 0.2, PhasedSpatial{kPi}));
  CHECK(pi.m == cplx(0.0, 0.0));
}

TEST_CASE("L_S = 0 spatial reproduces the classical triple") {
  for (const auto& [s, c] : {std::pair{thermal(2.0, 0.0, 1.0, 0.3), thermal(2.0, 0.0, 1.0, 0.3, ClassicalSingle{})},
                             std::pair{de_sitter_distances(0.1, 5.0, 0.0, 1.36, 0.05),
                                       de_sitter_distances(0.1, 5.0, 0.0, 1.36, 0.05, ClassicalSingle{})}}) {
    const auto a = run(s), b = run(c);
    CHECK(a.p_a == Approx(b.p_a).epsilon(1e-12));
    CHECK(a.m == b.m);
    CHECK(std::abs(a.l) == Approx(std::abs(b.l)).epsilon(1e-8));
  }
}

TEST_CASE("tau0 = 0 degeneracy of the temporal kinds") {
  const auto cl = run(de_sitter_distances(0.2, 2.5, 1.0, 3.53, 1.0, ClassicalSingle{}));
  for (const SuperpositionKind& kind : {SuperpositionKind{PastFuture{0.0}}, SuperpositionKind{CauseEffect{0.0}}}) {
    const auto d = run(de_sitter_distances(0.2, 2.5, 1.0, 3.53, 1.0, kind));
    CHECK(d.p_a == Approx(cl.p_a).epsilon(1e-8));
    CHECK(std::abs(d.m) == Approx(std::abs(cl.m)).epsilon(1e-8));
    CHECK(std::abs(d.l) == Approx(std::abs(cl.l)).epsilon(1e-8));
  }
}

TEST_CASE("spatial |M| does not depend on L_S") {
  const double ref = std::abs(run(thermal(1.0, 0.5, 1.0, 0.2)).m);
  for (double LS : {1.0, 2.5, 7.0, 20.0}) CHECK(std::abs(run(thermal(1.0, LS, 1.0, 0.2)).m) == ref);
}

TEST_CASE("interference is suppressed at large superposition distance (de Sitter spatial regime)") {
  for (const auto& s : {de_sitter_distances(0.1, 5.0, 50.0, 1.36, 0.05), de_sitter_distances(0.198, 5.0, 50.0, 1.36, 0.05),
                        de_sitter_distances(0.2, 2.5, 50.0, 1.36, 0.02), de_sitter_distances(0.01, 40.0, 50.0, 1.0, 0.1)}) {
    const auto d = run(s);
    CHECK(std::abs(term(d.p_detail, "interference")) < 1e-3 * std::abs(term(d.p_detail, "local")));
  }
}

TEST_CASE("thermal interference decays as 1/L_S") {
  // Large-L limit of the spectral form: (pi / L) rho(0) times the Gaussian weight at w = 0.
  for (double k : {0.5, 5.0}) {
    const double a = std::abs(term(run(thermal(k, 50.0, 1.0, 0.1)).p_detail, "interference"));
    const double b = std::abs(term(run(thermal(k, 100.0, 1.0, 0.1)).p_detail, "interference"));
    CAPTURE(k);
    CHECK(a / b == Approx(2.0).epsilon(0.02));
  }
}

TEST_CASE("temporal P_D relaxes to half the classical value at large tau0") {
  const double l = 0.2, R = 4.99;  // beta sigma ~ 3.2
  const double p0 = run(de_sitter_distances(l, R, 1.0, 2.0, 1.0, PastFuture{0.0})).p_a;
  const double p6 = run(de_sitter_distances(l, R, 1.0, 2.0, 1.0, PastFuture{6.0})).p_a;
  CHECK(p6 / p0 == Approx(0.5).epsilon(0.01));
}

TEST_CASE("P_D is real and non-negative over random parameters") {
  Gen g(31);
  for (int i = 0; i < 40; ++i) {
    const double l = g.uniform(0.05, 0.2), R = g.uniform(0.0, 0.99 / l), om = g.uniform(-8.0, 2.0);
    Scenario s = i % 2 ? de_sitter_distances(l, R, g.uniform(0.0, 5.0), g.uniform(0.2, 4.0), om)
                       : thermal(g.uniform(0.05, 8.0), g.uniform(0.0, 5.0), g.uniform(0.2, 4.0), om);
    // the de Sitter pole shadow sits at 2 eps / beta, so the ladder is scaled for small beta
    if (i % 2) {
      const double k = std::min(1.0, derive_beta(l, R) / 0.2);
      for (double& e : s.quadrature.epsilon_ladder) e *= k;
    }
    CAPTURE(i);
    const auto p = transition_probability(validate_scenario(s)).value;
    CHECK(std::abs(p.imag()) <= 1e-6 * std::abs(p) + 1e-12);
    CHECK(p.real() >= 0.0);
  }
}

TEST_CASE("breakdown sums to totals") {
  const auto d = run(de_sitter_angles(0.1, 4.0, kPi / 2, kPi / 6, 0.3, PhasedSpatial{1.0}));
  for (const Element* e : {&d.p_detail, &d.m_detail, &d.l_detail}) {
    cplx sum = 0.0;
    for (const auto& t : e->terms) sum += t.value;
    CHECK(rel(sum, e->value) < 1e-12);
  }
}

TEST_CASE("coupling enters as lambda^2") {
  Scenario s = thermal(1.0, 2.0, 1.0, 0.2);
  const auto a = run(s);
  s.detectors.lambda = 2.0;
  const auto b = run(s);
  CHECK(b.p_a == 4.0 * a.p_a);
  CHECK(b.m == 4.0 * a.m);
  CHECK(b.l == 4.0 * a.l);
}

TEST_CASE("classical de Sitter and thermal share the local probability at kappa = beta") {
  const double b = derive_beta(0.1, 5.0);
  const auto ds = run(de_sitter_distances(0.1, 5.0, 0.0, 1.36, 0.05, ClassicalSingle{}));
  const auto th = run(thermal(b, 0.0, 1.36, 0.05, ClassicalSingle{}));
  CHECK(ds.p_a == Approx(th.p_a).epsilon(1e-12));
}

TEST_CASE("overlapping inner branches use the local integral") {
  const double k = 2.0, om = 0.2;
  const auto d = run(thermal(k, 1.0, 1.0, om));
  const auto cl = run(thermal(k, 0.0, 1.0, om, ClassicalSingle{}));
  CHECK(rel(term(d.l_detail, "inner"), cl.p_a / 4.0) < 1e-12);
}

TEST_CASE("classical nonlocal term is the full-line offset integral") {
  const double k = 1.5, LM = 2.0, om = -0.7;
  const auto d = run(thermal(k, 0.0, LM, om, ClassicalSingle{}));
  CHECK(rel(d.l, kSqrtPi * full(Kind::ThermalOffset, k, LM, om)) < 1e-5);
}

TEST_CASE("distance layout beyond the patch diameter flags the nonlocal term") {
  const auto d = run(de_sitter_distances(0.2, 2.5, 6.0, 3.0, 0.1));
  CHECK_FALSE(d.l_available);
  CHECK(std::isnan(d.l.real()));
  CHECK(flagged(d, "NONLOCAL_UNAVAILABLE"));
  CHECK(std::abs(d.m) > 0.0);
}

TEST_CASE("thermal temporal superposition is flagged as an extension") {
  CHECK(flagged(run(thermal(1.0, 1.0, 1.0, 0.1, PastFuture{1.0})), "EXTENSION_THERMAL_TEMPORAL"));
  CHECK_FALSE(flagged(run(thermal(1.0, 1.0, 1.0, 0.1)), "EXTENSION_THERMAL_TEMPORAL"));
}
