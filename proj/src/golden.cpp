#include <fstream>

#include "check_util.hpp"
#include "harvest/builders.hpp"
#include "harvest/density_matrix.hpp"
#include "harvest/quadrature.hpp"
#include "json.hpp"

#ifndef HARVEST_GOLDEN_PATH
#define HARVEST_GOLDEN_PATH "data/golden.json"
#endif

namespace harvest {

namespace {

Scenario with_backend(Scenario s, Backend b) {
  s.quadrature.backend = b;
  return s;
}

cplx integral(IntegralSpec spec, Backend b) {
  QuadratureConfig q;
  q.backend = b;
  return integrate(spec, q).value;
}

}  // namespace

std::string default_golden_path() { return HARVEST_GOLDEN_PATH; }

std::vector<GoldenCase> golden_cases() {
  std::vector<GoldenCase> cases;
  cases.push_back({"ds_local_full_beta0.2309_omega1", [](Backend b) {
                     IntegralSpec s;
                     s.correlator = {Family::DeSitterLocal, 0.2309, 0.0, 0.0};
                     s.omega = 1.0;
                     return integral(s, b);
                   }});
  cases.push_back({"th_offset_full_kappa0.2_omega-6_L1", [](Backend b) {
                     IntegralSpec s;
                     s.correlator = {Family::ThermalOffset, 0.2, 1.0, 0.0};
                     s.omega = -6.0;
                     return integral(s, b);
                   }});
  cases.push_back({"ds_spatial_P_D_l0.1_R5_omega0.05_LS2_LM1.36", [](Backend b) {
                     const auto s = de_sitter_distances(0.1, 5.0, 2.0, 1.36, 0.05);
                     return transition_probability(validate_scenario(with_backend(s, b))).value;
                   }});
  cases.push_back({"ds_spatial_M_l0.1_R5_omega0.05_LS2_LM1.36", [](Backend b) {
                     const auto s = de_sitter_distances(0.1, 5.0, 2.0, 1.36, 0.05);
                     return entangling_term(validate_scenario(with_backend(s, b))).value;
                   }});
  cases.push_back({"th_spatial_L_kappa5_omega0.1_LS2.5_LM1", [](Backend b) {
                     const auto s = thermal(5.0, 2.5, 1.0, 0.1);
                     return nonlocal_term(validate_scenario(with_backend(s, b))).value;
                   }});
  cases.push_back({"ds_cause_effect_M_l0.2_R2.5_omega1_LM3.53_tau2", [](Backend b) {
                     const auto s = de_sitter_distances(0.2, 2.5, 0.0, 3.53, 1.0, CauseEffect{2.0});
                     return entangling_term(validate_scenario(with_backend(s, b))).value;
                   }});
  cases.push_back({"ds_past_future_P_D_l0.2_R2.5_omega1_LM3.53_tau3", [](Backend b) {
                     const auto s = de_sitter_distances(0.2, 2.5, 0.0, 3.53, 1.0, PastFuture{3.0});
                     return transition_probability(validate_scenario(with_backend(s, b))).value;
                   }});
  return cases;
}

std::vector<CheckResult> golden_checks(const std::string& path) {
  std::vector<CheckResult> out;
  nlohmann::json doc;
  try {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    out.push_back({"golden.file", "golden file " + path, false, e.what(), "readable JSON", 0.0});
    return out;
  }
  const auto& stored = doc["cases"];
  for (const auto& gc : golden_cases()) {
    out.push_back(detail::run_check("golden." + gc.name, "regression " + gc.name,
                                    "adaptive rel 1e-4, oracle rel 1e-8", [&](CheckResult& r) {
      if (!stored.contains(gc.name)) {
        r.measured = "missing from golden file";
        return;
      }
      const cplx want(stored[gc.name]["re"].get<double>(), stored[gc.name]["im"].get<double>());
      const double da = detail::rel(gc.compute(Backend::Adaptive), want);
      const double dor = detail::rel(gc.compute(Backend::Oracle), want);
      r.passed = da < 1e-4 && dor < 1e-8;
      r.measured = "adaptive " + detail::sci(da) + ", oracle " + detail::sci(dor);
    }));
  }
  return out;
}

}  // namespace harvest
