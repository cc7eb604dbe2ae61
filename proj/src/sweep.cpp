#include "harvest/sweep.hpp"

#include <chrono>
#include <cstdlib>

#include <omp.h>

namespace harvest {

long grid_size(const RunConfig& cfg) {
  long n = 1;
  for (const auto& a : cfg.axes) n *= a.count;
  return n;
}

SweepRow compute_point(const RunConfig& cfg, long flat_index) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  Scenario s = cfg.base;
  long rest = flat_index;
  std::vector<int> index(cfg.axes.size());
  for (std::size_t k = cfg.axes.size(); k-- > 0;) {
    index[k] = static_cast<int>(rest % cfg.axes[k].count);
    rest /= cfg.axes[k].count;
  }
  for (std::size_t k = 0; k < cfg.axes.size(); ++k) {
    const double v = cfg.axes[k].value(index[k]);
    row.index.push_back(index[k]);
    row.values.push_back(v);
    apply_param(s, cfg.axes[k].param, v);
  }
  try {
    row.report = compute(s);
    if (cfg.baseline) row.baseline = compute(with_kind(s, ClassicalSingle{}));
  } catch (const Error& e) {
    row.report.reset();
    row.baseline.reset();
    row.error = std::string(to_string(e.code()));
    row.error_detail = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<SweepRow> run_sweep_serial(const RunConfig& cfg) {
  const long n = grid_size(cfg);
  std::vector<SweepRow> rows;
  rows.reserve(n);
  for (long i = 0; i < n; ++i) rows.push_back(compute_point(cfg, i));
  return rows;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, int workers) {
  const long n = grid_size(cfg);
  std::vector<SweepRow> rows(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (long i = 0; i < n; ++i) {
    rows[i] = compute_point(cfg, i);
  }
  return rows;
}

int default_workers() {
  if (const char* env = std::getenv("HARVEST_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

}  // namespace harvest
