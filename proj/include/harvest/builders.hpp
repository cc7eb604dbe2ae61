#pragma once

#include "harvest/scenario.hpp"

namespace harvest {

inline Scenario de_sitter_distances(double l, double R_D, double L_S, double L_M, double omega,
                                    SuperpositionKind kind = Spatial{}) {
  Scenario s;
  s.spacetime = DeSitterGeometry{l, R_D, DistanceLayout{L_S, L_M}};
  s.detectors.omega = omega;
  s.kind = kind;
  return s;
}

inline Scenario de_sitter_angles(double l, double R_D, double theta_S, double theta_M,
                                 double omega, SuperpositionKind kind = Spatial{}) {
  Scenario s;
  s.spacetime = DeSitterGeometry{l, R_D, symmetric_layout(theta_S, theta_M)};
  s.detectors.omega = omega;
  s.kind = kind;
  return s;
}

inline Scenario thermal(double kappa, double L_S, double L_M, double omega,
                        SuperpositionKind kind = Spatial{}) {
  Scenario s;
  s.spacetime = ThermalGeometry{kappa, L_S, L_M};
  s.detectors.omega = omega;
  s.kind = kind;
  return s;
}

}  // namespace harvest
