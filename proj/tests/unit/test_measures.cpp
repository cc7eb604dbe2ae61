#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "harvest/builders.hpp"
#include "harvest/measures.hpp"

using namespace harvest;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

TEST_CASE("concurrence") {
  CHECK(concurrence(0.5, 0.5, 0.2) == 0.0);
  CHECK(concurrence(0.25, 0.25, 0.6) == Approx(0.7));
  CHECK(concurrence(0.0, 0.0, 0.3) == Approx(0.6));
}

TEST_CASE("concurrence depends on |m| only") {
  Gen g(41);
  for (int i = 0; i < 200; ++i) {
    const double p = g.uniform(0.0, 1.0), q = g.uniform(0.0, 1.0), r = g.uniform(0.0, 1.0);
    const double a = concurrence(p, q, std::polar(r, g.uniform(-kPi, kPi)));
    CHECK(a == Approx(concurrence(p, q, r)).epsilon(1e-14));
    CHECK(a >= 0.0);
  }
}

TEST_CASE("mutual information examples") {
  // 0.15 ln 0.15 + 0.05 ln 0.05 - 0.2 ln 0.1
  const double ref = 0.15 * std::log(0.15) + 0.05 * std::log(0.05) - 0.2 * std::log(0.1);
  CHECK(ref == Approx(0.026163).epsilon(1e-4));
  CHECK(mutual_information(0.1, 0.1, 0.05).value == Approx(ref).epsilon(1e-14));
  for (double p : {0.0, 1e-6, 0.1, 0.4}) CHECK(mutual_information(p, p, 0.0).value == 0.0);
}

TEST_CASE("mutual information is increasing in |l|") {
  double prev = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double l = 0.1 * i / 10.5;
    const double v = mutual_information(0.1, 0.1, l).value;
    CHECK(v > prev);
    // d/d|l| = ln((P + |l|) / (P - |l|)) > 0
    CHECK(std::log((0.1 + l) / (0.1 - l)) > 0.0);
    prev = v;
  }
}

TEST_CASE("mutual information: non-negative, zero only at l = 0, general formula") {
  Gen g(42);
  for (int i = 0; i < 500; ++i) {
    const double p = g.log_uniform(1e-8, 0.5), q = g.log_uniform(1e-8, 0.5);
    const double lmax = std::sqrt(p * q);
    const double l = g.uniform(0.0, lmax);
    const auto mi = mutual_information(p, q, std::polar(l, g.uniform(-kPi, kPi)));
    CHECK(mi.value >= 0.0);
    CHECK(mi.l_plus >= mi.l_minus);
    CHECK(mi.l_minus >= 0.0);
    const double root = std::sqrt((p - q) * (p - q) + 4 * l * l);
    const double lp = 0.5 * (p + q + root), lm = std::max(0.5 * (p + q - root), 0.0);
    CHECK(mi.value == Approx(xlogx(lp) + xlogx(lm) - xlogx(p) - xlogx(q)).epsilon(1e-9));
    if (l > 1e-3 * lmax) CHECK(mi.value > 0.0);
  }
}

TEST_CASE("mutual information clamps a negative lower eigenvalue") {
  const auto mi = mutual_information(0.1, 0.1, 0.12);
  CHECK(mi.clamped);
  CHECK(mi.l_minus == 0.0);
  CHECK_FALSE(mutual_information(0.1, 0.1, 0.05).clamped);
}

TEST_CASE("planck rate") {
  CHECK(planck_rate(0.1, 0.2309401) == Approx(1.1215e-3).epsilon(1e-4));
  CHECK(2 * kPi * 0.1 / 0.2309401 == Approx(2.72071).epsilon(1e-5));
  CHECK(planck_rate(0.0, 0.5) == Approx(0.5 / (4 * kPi * kPi)));
  Gen g(43);
  for (int i = 0; i < 200; ++i) {
    const double om = g.uniform(1e-3, 5.0), b = g.uniform(0.05, 5.0);
    CHECK(planck_rate(-om, b) / planck_rate(om, b) == Approx(std::exp(2 * kPi * om / b)).epsilon(1e-12));
    CHECK(planck_rate(om, b) > 0.0);
    CHECK(planck_rate(-om, b) > 0.0);
  }
  double prev = planck_rate(0.01, 1.0);
  for (double om = 0.5; om < 50.0; om += 0.5) {
    const double r = planck_rate(om, 1.0);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(planck_rate(200.0, 1.0) < 1e-300);
}

TEST_CASE("harvest report") {
  const auto r = compute(thermal(5.0, 2.5, 1.0, 0.1));
  CHECK(r.p_d == r.elements.p_a);
  CHECK(r.abs_m == std::abs(r.elements.m));
  CHECK(r.concurrence == concurrence(r.p_d, r.p_d, r.elements.m));
  CHECK(r.mutual_information == mutual_information(r.p_d, r.p_d, r.elements.l).value);
  CHECK(r.concurrence > 0.0);
  const auto cl = compute(thermal(8.0, 0.0, 1.0, 0.1, ClassicalSingle{}));
  CHECK(cl.concurrence == 0.0);
  CHECK(std::find(cl.flags.begin(), cl.flags.end(), "ZERO_CONCURRENCE") != cl.flags.end());
}

TEST_CASE("classical de Sitter rate approaches the Planck spectrum for long switching") {
  // beta and Omega fixed in physical units; sigma_eff grows.
  const double l = 0.2, R = 4.99, beta = derive_beta(l, R), om = 0.25;
  double prev = 1.0;
  for (double width : {4.0, 8.0, 16.0}) {
    Scenario s = de_sitter_distances(l, R, 0.0, 1.0, om, ClassicalSingle{});
    s.detectors.width = width;
    const double rate = compute(s).p_d / (std::sqrt(kPi) * width);
    const double d = std::abs(rate / planck_rate(om, beta) - 1.0);
    CAPTURE(width);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.02);
}
