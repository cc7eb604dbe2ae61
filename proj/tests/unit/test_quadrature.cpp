#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "harvest/quadrature.hpp"
#include "oracles.hpp"

using namespace harvest;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

oracle::Kind kind_of(Family f) {
  switch (f) {
    case Family::DeSitterLocal: return oracle::Kind::DeSitterLocal;
    case Family::DeSitterOffset: return oracle::Kind::DeSitterOffset;
    case Family::ThermalLocal: return oracle::Kind::ThermalLocal;
    case Family::ThermalOffset: return oracle::Kind::ThermalOffset;
  }
  return oracle::Kind::DeSitterLocal;
}

IntegralSpec spec(Family f, double rate, double L, double omega, double tau0 = 0.0,
                  Domain d = Domain::FullLine) {
  IntegralSpec s;
  s.correlator = {f, rate, L, 0.0};
  s.omega = omega;
  s.tau0 = tau0;
  s.envelope = tau0 != 0.0 ? Envelope::GaussianCosh : Envelope::Gaussian;
  s.domain = d;
  return s;
}

cplx spectral(const IntegralSpec& s) {
  return oracle::spectral_integral(kind_of(s.correlator.family), s.correlator.rate,
                                   s.correlator.separation, s.omega, s.width, s.tau0);
}

}  // namespace

TEST_CASE("GK21 integrates polynomials exactly") {
  for (int n = 0; n <= 31; ++n) {
    auto f = [n](double x) { return cplx(std::pow(x, n), 0.0); };
    const auto r = integrate_adaptive(f, 0.0, 1.0, {}, 1e-12, 1000);
    const double exact = 1.0 / (n + 1);
    CAPTURE(n);
    CHECK(std::abs(r.value - exact) < 1e-14);
    // the embedded Gauss rule is exact too up to degree 19, so no refinement happens
    if (n <= 19) CHECK(r.panels == 1);
  }
}

TEST_CASE("adaptive integration of analytic test functions") {
  auto g = [](double x) { return cplx(std::exp(-x * x / 4.0), 0.0); };
  CHECK(integrate_adaptive(g, -16, 16, {}, 1e-12, 1000).value.real() ==
        Approx(2.0 * std::sqrt(kPi)).epsilon(1e-13));
  const double om = 1.7;
  auto h = [om](double x) { return std::exp(-x * x / 4.0) * std::exp(cplx(0.0, -om * x)); };
  const cplx v = integrate_adaptive(h, -16, 16, {}, 1e-12, 1000).value;
  CHECK(v.real() == Approx(2.0 * std::sqrt(kPi) * std::exp(-om * om)).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-14);
  auto z = [](double) { return cplx(0.0, 0.0); };
  const auto r = integrate_adaptive(z, -16, 16, {}, 1e-6, 1000);
  CHECK(r.value == cplx(0.0, 0.0));
  CHECK(r.abs_err == 0.0);
}

TEST_CASE("panel budget exhaustion is NON_CONVERGED") {
  auto spike = [](double x) { return cplx(1.0 / (x * x + 1e-12), 0.0); };
  try {
    integrate_adaptive(spike, -1.0, 1.0, {}, 1e-12, 5);
    FAIL("expected NON_CONVERGED");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConverged);
  }
}

TEST_CASE("extrapolation fits the polynomial part exactly") {
  const std::vector<double> x = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<cplx> y;
  for (double e : x) y.push_back(cplx(2.0, -1.0) + cplx(3.0, 1.0) * e - 40.0 * e * e + 900.0 * e * e * e);
  const auto fit = fit_polynomial(x, y, 3);
  CHECK(std::abs(fit.coefficients[0] - cplx(2.0, -1.0)) < 1e-12);
  CHECK(fit.residual < 1e-12);
  CHECK(extrapolation_degree(3) == 1);
  CHECK(extrapolation_degree(5) == 3);
}

TEST_CASE("no pole in the window: extrapolation equals the last rung") {
  QuadratureConfig q;
  const auto s = spec(Family::DeSitterOffset, 0.2, 40.0, 0.0);
  const auto ext = integrate_extrapolated(s, q);
  const auto last = integrate_fixed_epsilon(s, q, q.epsilon_ladder.back());
  CHECK(rel(ext.value, last.value) < 1e-8);
}

TEST_CASE("golden anchors from the spectral representation") {
  QuadratureConfig q;
  struct Case { IntegralSpec s; double value; };
  const Case cases[] = {
      {spec(Family::ThermalLocal, 6.0, 0.0, 0.1), 0.15092136628695},
      {spec(Family::DeSitterLocal, 0.2309, 0.0, 1.0), 0.0041466588042768},
      {spec(Family::ThermalOffset, 6.0, 2.5, 0.1), 0.098560333130134},
      {spec(Family::ThermalOffset, 0.2, 1.0, -6.0), -0.034633549411786},
  };
  for (const auto& c : cases) {
    CHECK(spectral(c.s).real() == Approx(c.value).epsilon(1e-11));
    CHECK(rel(integrate_extrapolated(c.s, q).value, c.value) < 1e-4);
    CHECK(rel(pv_oracle(c.s, q).value, c.value) < 1e-9);
  }
}

TEST_CASE("both backends against the spectral and contour oracles") {
  QuadratureConfig q;
  Gen g(21);
  const Family fams[] = {Family::DeSitterLocal, Family::DeSitterOffset, Family::ThermalLocal,
                         Family::ThermalOffset};
  for (int i = 0; i < 24; ++i) {
    const Family f = fams[i % 4];
    const double rate = g.log_uniform(0.05, 4.0), om = g.uniform(-4.0, 2.0);
    const double L = (f == Family::DeSitterLocal || f == Family::ThermalLocal) ? 0.0 : g.uniform(0.3, 4.0);
    const double tau0 = i % 3 == 0 ? g.uniform(0.5, 4.0) : 0.0;
    const auto s = spec(f, rate, L, om, tau0);
    const cplx ref = spectral(s);
    const cplx cont = oracle::contour_integral(kind_of(f), rate, L, om, 1.0, tau0);
    CAPTURE(i);
    CAPTURE(rate);
    CAPTURE(om);
    CAPTURE(L);
    CAPTURE(tau0);
    CHECK(rel(cont, ref) < 1e-9);
    CHECK(rel(pv_oracle(s, q).value, ref) < 1e-8);
    CHECK(rel(integrate_extrapolated(s, q).value, ref) < 1e-4);
  }
}

TEST_CASE("half-line integrals against the contour oracle") {
  QuadratureConfig q;
  Gen g(22);
  for (int i = 0; i < 12; ++i) {
    const bool ds = i % 2 == 0;
    const double rate = g.log_uniform(0.05, 4.0), om = g.uniform(-2.0, 2.0), L = g.uniform(0.5, 4.0);
    const double tau0 = i % 3 == 0 ? g.uniform(0.5, 3.0) : 0.0;
    const Family f = ds ? Family::DeSitterOffset : Family::ThermalOffset;
    const auto s = spec(f, rate, L, om, tau0, Domain::HalfLine);
    const cplx ref = oracle::contour_integral(kind_of(f), rate, L, om, 1.0, tau0, true);
    CAPTURE(i);
    CHECK(rel(pv_oracle(s, q).value, ref) < 1e-8);
    CHECK(rel(integrate_extrapolated(s, q).value, ref) < 1e-4);
  }
}

TEST_CASE("full-line Hermitian integrals are real") {
  QuadratureConfig q;
  for (const auto& s : {spec(Family::DeSitterOffset, 0.3, 1.36, 0.7), spec(Family::ThermalOffset, 2.0, 2.5, -1.0),
                        spec(Family::DeSitterLocal, 0.5, 0.0, 0.2, 2.0)}) {
    const cplx v = integrate_extrapolated(s, q).value;
    CHECK(std::abs(v.imag()) <= 1e-8 * std::abs(v));
    const cplx o = pv_oracle(s, q).value;
    CHECK(std::abs(o.imag()) <= 1e-10);
  }
}

TEST_CASE("residue sanity for the de Sitter offset poles") {
  QuadratureConfig q;
  const double b = 0.2309, L = 1.36;
  auto s = spec(Family::DeSitterOffset, b, L, 0.3);
  const auto r = pv_oracle(s, q);
  REQUIRE(r.pole_terms.size() == 2);
  for (const auto& t : r.pole_terms) {
    const double p = t.location;
    // d/ds [sinh^2(b s / 2) - (b L / 2)^2] = (b / 2) sinh(b s)
    const double dprime = b / 2.0 * std::sinh(b * p);
    const cplx residue = -b * b / (16.0 * kPi * kPi) / dprime;
    CHECK(rel(t.residue, residue) < 1e-10);
    const cplx expected = cplx(0.0, kPi) * residue * std::exp(-p * p / 4.0) * std::exp(cplx(0.0, -0.3 * p));
    CHECK(rel(t.contribution, expected) < 1e-6);
  }
}

TEST_CASE("s_max insensitivity") {
  QuadratureConfig a, b;
  b.s_max = 32.0;
  for (const auto& s : {spec(Family::DeSitterOffset, 0.3, 1.36, 0.7), spec(Family::ThermalLocal, 2.0, 0.0, -1.0)}) {
    CHECK(rel(pv_oracle(s, a).value, pv_oracle(s, b).value) < 1e-10);
  }
}

TEST_CASE("linearity in the correlator") {
  QuadratureConfig q;
  q.rel_tol = 1e-11;
  const double e = 1e-2;
  auto a = spec(Family::ThermalOffset, 1.0, 2.0, 0.4);
  auto b = spec(Family::ThermalLocal, 1.0, 0.0, 0.4);
  a.correlator.epsilon = b.correlator.epsilon = e;
  auto sum = [&](double s) { return integrand(a, s) + integrand(b, s); };
  const cplx joint = integrate_adaptive(sum, -16.0, 16.0, {-2.0, 0.0, 2.0}, 1e-11, 1000000).value;
  const cplx parts = integrate_fixed_epsilon(a, q, e).value + integrate_fixed_epsilon(b, q, e).value;
  CHECK(rel(joint, parts) < 1e-10);
}

TEST_CASE("window covers the cosh envelope") {
  QuadratureConfig q;
  CHECK(window(spec(Family::DeSitterLocal, 0.2, 0.0, 0.0), q) == 16.0);
  CHECK(window(spec(Family::DeSitterLocal, 0.2, 0.0, 0.0, 3.0), q) == 22.0);
}
