#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "harvest/sweep.hpp"

namespace harvest {

inline constexpr const char* kVersion = "1.0.0";

std::vector<std::string> csv_header(const RunConfig& cfg);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, const RunConfig& cfg);

struct RunInfo {
  int workers = 1;
  double wall_seconds = 0.0;
};

nlohmann::json sidecar_metadata(const std::vector<SweepRow>& rows, const RunConfig& cfg,
                                const RunInfo& info);

// Writes path and path + ".meta.json". Throws Error(IO).
void emit_csv(const std::vector<SweepRow>& rows, const RunConfig& cfg, const std::string& path,
              const RunInfo& info);

std::string format_double(double v);

}  // namespace harvest
