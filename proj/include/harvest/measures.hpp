#pragma once

#include <string>
#include <vector>

#include "harvest/correlators.hpp"
#include "harvest/density_matrix.hpp"

namespace harvest {

// 2 max(0, |M| - sqrt(p_a p_b))
double concurrence(double p_a, double p_b, cplx m);

struct MutualInformation {
  double value = 0.0;  // nats
  double l_plus = 0.0;
  double l_minus = 0.0;
  bool clamped = false;  // l_minus was negative and set to 0
};

MutualInformation mutual_information(double p_a, double p_b, cplx l);

// Omega / (2 pi (e^{2 pi Omega / beta} - 1)), with the Omega -> 0 limit beta / (4 pi^2).
double planck_rate(double omega, double beta);

struct HarvestReport {
  double p_d = 0.0;
  double p_err = 0.0;
  double abs_m = 0.0;
  double m_err = 0.0;
  double abs_l = 0.0;
  double l_err = 0.0;
  double concurrence = 0.0;
  double concurrence_err = 0.0;
  double mutual_information = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;
  std::vector<std::string> flags;
  DensityMatrixElements elements;
};

HarvestReport harvest_report(const DensityMatrixElements& d);

// validate + assemble + measures.
HarvestReport compute(const Scenario& scenario);

}  // namespace harvest
