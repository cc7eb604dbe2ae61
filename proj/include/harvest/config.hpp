#pragma once

#include <string>
#include <vector>

#include "harvest/scenario.hpp"
#include "json.hpp"

namespace harvest {

enum class Param { l, R_D, theta_S, theta_M, L_S, L_M, Omega, kappa, tau0, dphi };
enum class Spacing { Linear, Log };

struct Axis {
  Param param = Param::L_S;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  double value(int i) const;
};

struct OutputSelection {
  bool p_d = true;
  bool abs_m = true;
  bool abs_l = true;
  bool concurrence = true;
  bool mutual_information = true;
  bool breakdown = false;
};

struct RunConfig {
  Scenario base;
  std::vector<Axis> axes;  // empty for a single scenario
  OutputSelection outputs;
  bool baseline = false;
  nlohmann::json echo;  // normalized config with every default filled in
};

std::string_view param_name(Param p);
// Column name with unit suffix, e.g. "L_S_over_sigma".
std::string param_column(Param p);

// Throws Error(SCHEMA) naming the offending field, or ValidationError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Sets one swept parameter on a scenario.
void apply_param(Scenario& scenario, Param p, double value);

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const QuadratureConfig& q);

}  // namespace harvest
