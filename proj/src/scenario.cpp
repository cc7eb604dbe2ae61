#include "harvest/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace harvest {

double derive_beta(double l, double R_D) {
  if (!(l > 0.0) || !(R_D >= 0.0) || !(R_D * l < 1.0)) {
    throw Error(ErrorCode::OutsideStaticPatch,
                "R_D l = " + std::to_string(R_D * l) + " outside [0, 1) for l > 0");
  }
  return 1.0 / std::sqrt(1.0 / (l * l) - R_D * R_D);
}

double local_acceleration(double l, double R_D) {
  if (l == 0.0 || R_D == 0.0) return 0.0;
  if (!(R_D * l < 1.0)) throw Error(ErrorCode::OutsideStaticPatch, "R_D >= 1/l");
  return l * R_D / std::sqrt(1.0 / (l * l) - R_D * R_D);
}

double gibbons_hawking_temperature(double beta) { return beta / (2.0 * std::numbers::pi); }

double chord_distance(double R_D, double dtheta) {
  return 2.0 * R_D * std::sin(dtheta / 2.0);
}

CrossDistances thermal_mi_distances(double L_S, double L_M) {
  return {L_S + L_M, L_S - L_M};
}

CrossDistances de_sitter_mi_distances(double R_D, const AngleLayout& a) {
  return {chord_distance(R_D, a.theta_2p - a.theta_1),
          chord_distance(R_D, a.theta_1p - a.theta_2)};
}

AngleLayout symmetric_layout(double theta_S, double theta_M) {
  return {0.0, theta_S, theta_M, theta_S + theta_M};
}

Scenario with_kind(Scenario scenario, SuperpositionKind kind) {
  scenario.kind = kind;
  return scenario;
}

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Checker {
  std::vector<Issue> issues;

  void require(bool ok, ErrorCode code, const std::string& msg) {
    if (!ok) issues.push_back({code, msg});
  }
  bool finite(double v, const char* name) {
    if (std::isfinite(v)) return true;
    issues.push_back({ErrorCode::NonfiniteParameter, std::string(name) + " is not finite"});
    return false;
  }
};

void check_angles(Checker& c, const AngleLayout& a, double R_D, DerivedGeometry& g) {
  for (double v : {a.theta_1, a.theta_2, a.theta_1p, a.theta_2p}) c.finite(v, "angle");
  const double theta_S = a.theta_2 - a.theta_1;
  const double theta_Sp = a.theta_2p - a.theta_1p;
  const double theta_M1 = a.theta_1p - a.theta_1;
  const double theta_M2 = a.theta_2p - a.theta_2;
  c.require(close(std::abs(theta_S), std::abs(theta_Sp)), ErrorCode::UnequalSuperpositionAngles,
            "theta_S = " + std::to_string(theta_S) + ", theta_S' = " + std::to_string(theta_Sp));
  c.require(theta_M1 > 0.0 && theta_M2 > 0.0, ErrorCode::NonpositiveEntanglingAngle,
            "theta_M must be > 0");
  c.require(close(theta_M1, theta_M2), ErrorCode::UnequalEntanglingAngles,
            "theta_M1 = " + std::to_string(theta_M1) + ", theta_M2 = " + std::to_string(theta_M2));
  g.L_S = std::abs(chord_distance(R_D, theta_S));
  g.L_M = chord_distance(R_D, theta_M1);
  const auto cross = de_sitter_mi_distances(R_D, a);
  g.cross_outer = cross.outer;
  g.cross_inner = cross.inner;
}

void check_de_sitter(Checker& c, const DeSitterGeometry& ds, DerivedGeometry& g) {
  const bool lf = c.finite(ds.l, "l");
  const bool rf = c.finite(ds.R_D, "R_D");
  c.require(!lf || ds.l > 0.0, ErrorCode::NonpositiveDeSitterLength, "l must be > 0");
  c.require(!rf || ds.R_D >= 0.0, ErrorCode::NegativeRadius, "R_D must be >= 0");
  const bool inside = lf && rf && ds.l > 0.0 && ds.R_D >= 0.0 && ds.R_D * ds.l < 1.0;
  c.require(!(lf && rf && ds.l > 0.0) || inside, ErrorCode::OutsideStaticPatch,
            "R_D * l = " + std::to_string(ds.R_D * ds.l) + " must be < 1");
  if (inside) g.rate = derive_beta(ds.l, ds.R_D);

  if (const auto* a = std::get_if<AngleLayout>(&ds.layout)) {
    check_angles(c, *a, ds.R_D, g);
  } else {
    const auto& d = std::get<DistanceLayout>(ds.layout);
    c.finite(d.L_S, "L_S");
    c.finite(d.L_M, "L_M");
    c.require(d.L_S >= 0.0, ErrorCode::NegativeSeparation, "L_S must be >= 0");
    g.L_S = d.L_S;
    g.L_M = d.L_M;
    const double diameter = 2.0 * ds.R_D;
    if (d.L_S <= diameter && d.L_M <= diameter && ds.R_D > 0.0) {
      const auto a = symmetric_layout(2.0 * std::asin(d.L_S / diameter),
                                      2.0 * std::asin(d.L_M / diameter));
      const auto cross = de_sitter_mi_distances(ds.R_D, a);
      g.cross_outer = cross.outer;
      g.cross_inner = cross.inner;
    }
  }
  c.require(!(g.L_M <= 0.0), ErrorCode::NonpositiveEntanglingDistance, "L_M must be > 0");
}

void check_thermal(Checker& c, const ThermalGeometry& th, DerivedGeometry& g) {
  c.finite(th.kappa, "kappa");
  c.finite(th.L_S, "L_S");
  c.finite(th.L_M, "L_M");
  c.require(th.kappa > 0.0, ErrorCode::NonpositiveTemperature, "kappa must be > 0");
  c.require(th.L_S >= 0.0, ErrorCode::NegativeSeparation, "L_S must be >= 0");
  c.require(th.L_M > 0.0, ErrorCode::NonpositiveEntanglingDistance, "L_M must be > 0");
  g.thermal = true;
  g.rate = th.kappa;
  g.L_S = th.L_S;
  g.L_M = th.L_M;
  const auto cross = thermal_mi_distances(th.L_S, th.L_M);
  g.cross_outer = cross.outer;
  g.cross_inner = cross.inner;
}

void check_kind(Checker& c, const SuperpositionKind& kind) {
  if (const auto* pf = std::get_if<PastFuture>(&kind)) c.finite(pf->tau0, "tau0");
  if (const auto* ce = std::get_if<CauseEffect>(&kind)) c.finite(ce->tau0, "tau0");
  if (const auto* ph = std::get_if<PhasedSpatial>(&kind)) {
    c.require(ph->dphi >= 0.0 && ph->dphi < 2.0 * std::numbers::pi, ErrorCode::PhaseOutOfRange,
              "dphi must lie in [0, 2 pi)");
  }
}

void check_quadrature(Checker& c, const QuadratureConfig& q) {
  const auto& e = q.epsilon_ladder;
  bool ok = e.size() >= 3;
  for (std::size_t i = 0; ok && i < e.size(); ++i) {
    ok = std::isfinite(e[i]) && e[i] > 0.0 && (i == 0 || e[i] < e[i - 1]);
  }
  c.require(ok, ErrorCode::BadEpsilonLadder,
            "epsilon ladder needs >= 3 positive, strictly decreasing entries");
  c.require(q.s_max >= 12.0, ErrorCode::WindowTooSmall, "s_max must be >= 12 sigma");
  c.require(q.rel_tol > 0.0 && q.rel_tol < 1.0, ErrorCode::BadTolerance,
            "rel_tol must lie in (0, 1)");
  c.require(q.max_panels > 0, ErrorCode::BadTolerance, "max_panels must be > 0");
}

}  // namespace

ValidatedScenario validate_scenario(const Scenario& scenario) {
  Checker c;
  DerivedGeometry g;
  if (const auto* ds = std::get_if<DeSitterGeometry>(&scenario.spacetime)) {
    check_de_sitter(c, *ds, g);
  } else {
    check_thermal(c, std::get<ThermalGeometry>(scenario.spacetime), g);
  }
  const auto& d = scenario.detectors;
  c.finite(d.omega, "Omega");
  if (c.finite(d.width, "sigma")) c.require(d.width > 0.0, ErrorCode::NonpositiveWidth, "sigma must be > 0");
  if (c.finite(d.lambda, "lambda")) c.require(d.lambda > 0.0, ErrorCode::NonpositiveCoupling, "lambda must be > 0");
  check_kind(c, scenario.kind);
  check_quadrature(c, scenario.quadrature);
  if (!c.issues.empty()) throw ValidationError(std::move(c.issues));
  return ValidatedScenario(scenario, g);
}

}  // namespace harvest
