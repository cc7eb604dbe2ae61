// Command-line front end: compute, sweep, baseline, verify.

#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "harvest/csv.hpp"
#include "harvest/measures.hpp"
#include "harvest/sweep.hpp"
#include "harvest/verify.hpp"

namespace {

using namespace harvest;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConverged = 3;

struct Overrides {
  std::string ladder;
  double rel_tol = 0.0;
};

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw Error(ErrorCode::Schema, "--epsilon-ladder: bad entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

RunConfig load(const std::string& path, const Overrides& o) {
  RunConfig cfg = parse_config(path);
  if (!o.ladder.empty()) cfg.base.quadrature.epsilon_ladder = parse_ladder(o.ladder);
  if (o.rel_tol > 0.0) cfg.base.quadrature.rel_tol = o.rel_tol;
  validate_scenario(cfg.base);
  cfg.echo["quadrature"] = to_json(cfg.base.quadrature);
  return cfg;
}

nlohmann::json report_json(const HarvestReport& r, double lambda2) {
  auto terms = [lambda2](const Element& e) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& t : e.terms) out[t.name] = {t.value.real() / lambda2, t.value.imag() / lambda2};
    return out;
  };
  return {{"P_D_per_lambda2", r.p_d / lambda2},
          {"P_D_err_per_lambda2", r.p_err / lambda2},
          {"M_per_lambda2", {r.elements.m.real() / lambda2, r.elements.m.imag() / lambda2}},
          {"abs_M_per_lambda2", r.abs_m / lambda2},
          {"abs_M_err_per_lambda2", r.m_err / lambda2},
          {"L_per_lambda2", {r.elements.l.real() / lambda2, r.elements.l.imag() / lambda2}},
          {"abs_L_per_lambda2", r.abs_l / lambda2},
          {"abs_L_err_per_lambda2", r.l_err / lambda2},
          {"concurrence_per_lambda2", r.concurrence / lambda2},
          {"concurrence_err_per_lambda2", r.concurrence_err / lambda2},
          {"mutual_information_nats", r.mutual_information},
          {"L_plus", r.l_plus},
          {"L_minus", r.l_minus},
          {"flags", r.flags},
          {"breakdown", {{"P_D", terms(r.elements.p_detail)},
                         {"M", terms(r.elements.m_detail)},
                         {"L", terms(r.elements.l_detail)}}}};
}

int run_compute(const std::string& path, const Overrides& o, bool baseline) {
  RunConfig cfg = load(path, o);
  Scenario s = cfg.base;
  if (baseline) s = with_kind(s, ClassicalSingle{});
  const double lambda2 = s.detectors.lambda * s.detectors.lambda;
  const HarvestReport r = compute(s);
  nlohmann::json out = {{"version", kVersion}, {"config", to_json(s)}, {"result", report_json(r, lambda2)}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_sweep_cmd(const std::string& path, const std::string& csv, const Overrides& o, int workers) {
  const RunConfig cfg = load(path, o);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_sweep(cfg, workers);
  RunInfo info;
  info.workers = workers;
  info.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit_csv(rows, cfg, csv, info);
  long failed = 0;
  for (const auto& r : rows) failed += !r.error.empty();
  std::cerr << rows.size() << " rows written to " << csv << " (" << failed << " with error codes)\n";
  return kExitOk;
}

int run_verify(bool full, const std::string& golden, bool explicit_golden) {
  auto report = verify_suite(full, golden, &std::cout);
  if (!full && explicit_golden) {
    for (auto& c : golden_checks(golden)) {
      print_check(std::cout, c);
      report.checks.push_back(std::move(c));
    }
  }
  long failed = 0;
  for (const auto& c : report.checks) failed += !c.passed;
  std::cout << report.checks.size() - failed << "/" << report.checks.size() << " checks passed\n";
  return report.ok() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and mutual information harvested by detectors in superposition"};
  app.require_subcommand(1);
  Overrides o;
  int workers = default_workers();
  app.add_option("--workers", workers, "Parallel workers for sweeps (default: HARVEST_WORKERS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--epsilon-ladder", o.ladder, "Comma-separated regulator ladder, descending");
  app.add_option("--rel-tol", o.rel_tol, "Relative tolerance per quadrature rung");

  std::string cfg_path, csv_path, golden = default_golden_path();
  bool full = false;
  auto* compute_cmd = app.add_subcommand("compute", "Evaluate one scenario and print JSON");
  compute_cmd->add_option("config", cfg_path)->required();
  auto* baseline_cmd = app.add_subcommand("baseline", "Evaluate the classical single-trajectory baseline");
  baseline_cmd->add_option("config", cfg_path)->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid and write CSV + metadata");
  sweep_cmd->add_option("config", cfg_path)->required();
  sweep_cmd->add_option("-o,--output", csv_path)->required();
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant checks (and --full acceptance)");
  verify_cmd->add_flag("--full", full, "Include golden regressions and acceptance criteria");
  auto* golden_opt = verify_cmd->add_option("--golden", golden, "Golden value file (also checked at the fast level when given)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*compute_cmd) return run_compute(cfg_path, o, false);
    if (*baseline_cmd) return run_compute(cfg_path, o, true);
    if (*sweep_cmd) return run_sweep_cmd(cfg_path, csv_path, o, workers);
    if (*verify_cmd) return run_verify(full, golden, golden_opt->count() > 0);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NonConverged ? kExitNonConverged : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
