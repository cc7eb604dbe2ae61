#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "harvest/error.hpp"

namespace harvest {

// Positions on the static-patch circle, radians. theta_1 / theta_2 are the two
// branches of detector A, theta_1p / theta_2p those of detector B.
struct AngleLayout {
  double theta_1 = 0.0;
  double theta_2 = 0.0;
  double theta_1p = 0.0;
  double theta_2p = 0.0;
};

// Proper distances given directly, units of sigma.
struct DistanceLayout {
  double L_S = 0.0;
  double L_M = 0.0;
};

struct DeSitterGeometry {
  double l = 0.0;    // 1/length, units 1/sigma
  double R_D = 0.0;  // static radius, units sigma
  std::variant<AngleLayout, DistanceLayout> layout;
};

struct ThermalGeometry {
  double kappa = 0.0;  // units 1/sigma
  double L_S = 0.0;
  double L_M = 0.0;
};

using Spacetime = std::variant<DeSitterGeometry, ThermalGeometry>;

struct DetectorParams {
  double omega = 0.0;   // gap, units 1/sigma
  double width = 1.0;   // switching timescale sigma
  double lambda = 1.0;  // coupling
};

struct Spatial {};
struct PastFuture { double tau0 = 0.0; };
struct CauseEffect { double tau0 = 0.0; };
struct ClassicalSingle {};
struct PhasedSpatial { double dphi = 0.0; };

using SuperpositionKind =
    std::variant<Spatial, PastFuture, CauseEffect, ClassicalSingle, PhasedSpatial>;

enum class Backend { Adaptive, Oracle };

struct QuadratureConfig {
  std::vector<double> epsilon_ladder = {1e-2, 3.1622776601683795e-3, 1e-3,
                                        3.1622776601683795e-4, 1e-4};
  double s_max = 16.0;  // half-window, units of width
  double rel_tol = 1e-6;
  Backend backend = Backend::Adaptive;
  long max_panels = 1000000;
};

struct Scenario {
  Spacetime spacetime;
  DetectorParams detectors;
  SuperpositionKind kind;
  QuadratureConfig quadrature;
};

// Distances derived once from the geometry. cross_outer / cross_inner are the
// A1-B2 and A2-B1 separations; absent when a formal distance layout exceeds
// the static-patch diameter.
struct DerivedGeometry {
  double rate = 0.0;  // beta (de Sitter) or kappa (thermal)
  double L_S = 0.0;
  double L_M = 0.0;
  std::optional<double> cross_outer;
  std::optional<double> cross_inner;
  bool thermal = false;
};

class ValidatedScenario {
 public:
  const Scenario& scenario() const { return scenario_; }
  const DerivedGeometry& geometry() const { return geometry_; }
  bool thermal() const { return geometry_.thermal; }

 private:
  friend ValidatedScenario validate_scenario(const Scenario&);
  ValidatedScenario(Scenario s, DerivedGeometry g) : scenario_(std::move(s)), geometry_(g) {}
  Scenario scenario_;
  DerivedGeometry geometry_;
};

// Throws ValidationError listing every violated invariant.
ValidatedScenario validate_scenario(const Scenario& scenario);

double derive_beta(double l, double R_D);
double local_acceleration(double l, double R_D);
double gibbons_hawking_temperature(double beta);
double chord_distance(double R_D, double dtheta);

struct CrossDistances {
  double outer;  // A1-B2
  double inner;  // A2-B1, signed
};

CrossDistances thermal_mi_distances(double L_S, double L_M);
CrossDistances de_sitter_mi_distances(double R_D, const AngleLayout& angles);

// theta_1 = 0, theta_2 = theta_S, theta_1p = theta_M, theta_2p = theta_S + theta_M.
AngleLayout symmetric_layout(double theta_S, double theta_M);

Scenario with_kind(Scenario scenario, SuperpositionKind kind);

}  // namespace harvest
