#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harvest/config.hpp"
#include "harvest/measures.hpp"

namespace harvest {

struct SweepRow {
  std::vector<int> index;
  std::vector<double> values;
  std::optional<HarvestReport> report;
  std::optional<HarvestReport> baseline;
  std::string error;  // error code, empty on success
  std::string error_detail;
  double seconds = 0.0;
};

// Number of grid points (1 for a config without axes).
long grid_size(const RunConfig& cfg);

// One grid point; never throws for numerical or validation failures.
SweepRow compute_point(const RunConfig& cfg, long flat_index);

// Serial reference.
std::vector<SweepRow> run_sweep_serial(const RunConfig& cfg);

// OpenMP over grid points; rows come back in grid order and match the serial
// reference exactly.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, int workers);

// Worker count from HARVEST_WORKERS, else the OpenMP default.
int default_workers();

}  // namespace harvest
