#include <algorithm>
#include <numbers>

#include "check_util.hpp"
#include "harvest/builders.hpp"
#include "harvest/measures.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/sweep.hpp"

namespace harvest {

using detail::fixed;
using detail::rel;
using detail::run_check;
using detail::sci;

namespace {

constexpr double kPi = std::numbers::pi;

std::string list(const std::vector<double>& v, int digits = 5) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fixed(x, digits);
  return s;
}

// Classical de Sitter rate at fixed physical beta and Omega, width sigma_eff.
double classical_rate(double omega, double sigma_eff) {
  auto s = de_sitter_distances(0.2, 4.99, 0.0, 1.0, omega, ClassicalSingle{});
  s.detectors.width = sigma_eff;
  const double p = transition_probability(validate_scenario(s)).value.real();
  return p / (std::sqrt(kPi) * sigma_eff);
}

constexpr double kSigmaEff = 8.0;
constexpr double kGap = 2.0;

CheckResult planck_limit() {
  return run_check("C1", "classical de Sitter rate -> Planck spectrum (sigma_eff = 8)",
                   "rel 2e-2, < 10 s", [](CheckResult& r) {
    const double beta = derive_beta(0.2, 4.99);
    const double got = classical_rate(kGap, kSigmaEff);
    const double want = planck_rate(kGap, beta);
    const double d = std::abs(got - want) / want;
    r.passed = d < 2e-2;
    r.measured = "rate " + sci(got) + " vs Planck " + sci(want) + ", rel " + sci(d) +
                 " (beta sigma_eff " + fixed(beta * kSigmaEff, 2) + ", Omega sigma_eff " +
                 fixed(kGap * kSigmaEff, 1) + ")";
  });
}

CheckResult detailed_balance() {
  return run_check("C2", "detailed balance rate(-Omega)/rate(Omega) = e^{2 pi Omega / beta}",
                   "rel 3e-2, < 10 s", [](CheckResult& r) {
    const double beta = derive_beta(0.2, 4.99);
    const double ratio = classical_rate(-kGap, kSigmaEff) / classical_rate(kGap, kSigmaEff);
    const double want = std::exp(2.0 * kPi * kGap / beta);
    const double d = std::abs(ratio - want) / want;
    r.passed = d < 3e-2;
    r.measured = "ratio " + sci(ratio) + " vs " + sci(want) + ", rel " + sci(d);
  });
}

CheckResult beta_kappa() {
  return run_check("C3", "classical de Sitter triple equals thermal triple at kappa = beta",
                   "rel 1e-8 on P_D, |M|, |L|, < 5 s", [](CheckResult& r) {
    const double beta = derive_beta(0.1, 5.0);
    const auto ds = assemble(validate_scenario(
        de_sitter_distances(0.1, 5.0, 0.0, 1.36, 0.05, ClassicalSingle{})));
    const auto th = assemble(validate_scenario(thermal(beta, 0.0, 1.36, 0.05, ClassicalSingle{})));
    const double dp = rel(ds.p_a, th.p_a);
    const double dm = rel(std::abs(ds.m), std::abs(th.m));
    const double dl = rel(std::abs(ds.l), std::abs(th.l));
    r.passed = dp < 1e-8 && dm < 1e-8 && dl < 1e-8;
    r.measured = "P_D " + sci(dp) + ", |M| " + sci(dm) + " (" + sci(std::abs(ds.m)) + " vs " +
                 sci(std::abs(th.m)) + "), |L| " + sci(dl) + " (" + sci(std::abs(ds.l)) + " vs " +
                 sci(std::abs(th.l)) + ")";
  });
}

std::vector<SweepRow> sweep(const Scenario& base, std::vector<Axis> axes, bool baseline = false) {
  RunConfig cfg;
  cfg.base = base;
  cfg.axes = std::move(axes);
  cfg.baseline = baseline;
  return run_sweep(cfg, default_workers());
}

const HarvestReport& report(const SweepRow& row) {
  if (!row.report) throw Error(ErrorCode::NonConverged, "grid point failed: " + row.error_detail);
  return *row.report;
}

CheckResult spatial_vs_separation() {
  return run_check("C4", "spatial superposition harvests where classical cannot; C(L_S) rises and plateaus",
                   "C_cl = 0, C > 0 for L_S >= 5, non-decreasing, plateau < 10%, < 60 s",
                   [](CheckResult& r) {
    const auto base = de_sitter_distances(0.198, 5.0, 0.0, 1.36, 0.05);
    const double c_cl = compute(with_kind(base, ClassicalSingle{})).concurrence;
    const auto rows = sweep(base, {Axis{Param::L_S, 2.0, 20.0, 10, Spacing::Linear}});
    std::vector<double> c, ls;
    bool positive = true, monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& rep = report(rows[i]);
      c.push_back(rep.concurrence);
      ls.push_back(rows[i].values[0]);
      if (ls.back() >= 5.0 && rep.concurrence <= 0.0) positive = false;
      if (i > 0 && c[i] < c[i - 1] - (rep.concurrence_err + report(rows[i - 1]).concurrence_err)) {
        monotone = false;
      }
    }
    const double plateau = (c.back() - c[4]) / c.back();
    r.passed = c_cl == 0.0 && positive && monotone && plateau < 0.1;
    r.measured = "C_cl " + sci(c_cl) + "; C(L_S=2..20) " + list(c) + "; plateau " + sci(plateau);
  });
}

CheckResult temperature_no_go() {
  return run_check("C5", "thermal: interior minimum in kappa, increasing on {4, 6, 8}, classical dies",
                   "all three, < 120 s", [](CheckResult& r) {
    const std::vector<double> grid = {0.5, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> c, c_cl;
    for (double k : grid) {
      const auto s = thermal(k, 2.5, 1.0, 0.1);
      c.push_back(compute(s).concurrence);
      c_cl.push_back(compute(with_kind(s, ClassicalSingle{})).concurrence);
    }
    const auto at = [&](double k) { return c[std::find(grid.begin(), grid.end(), k) - grid.begin()]; };
    const auto imin = std::min_element(c.begin(), c.end()) - c.begin();
    const bool interior = imin > 0 && imin < static_cast<long>(c.size()) - 1;
    const bool increasing = at(4) < at(6) && at(6) < at(8);
    const bool dies = c_cl.back() == 0.0;
    r.passed = interior && increasing && dies;
    r.measured = "C(kappa=0.5..8) " + list(c) + "; min at kappa " + fixed(grid[imin], 1) +
                 (increasing ? "; increasing on {4,6,8}" : "; NOT increasing on {4,6,8}") +
                 "; C_cl " + list(c_cl);
  });
}

CheckResult temporal_envelopes() {
  return run_check("C6", "temporal: |M_CE| decays, |M_PF| revives, P_D -> half",
                   "|M_CE(6)|/|M_CE(0)| < 1e-6, max|M_PF| on [4,8] >= 0.5 |M_PF(0)|, P_D ratio 0.5 +/- 1%, < 60 s",
                   [](CheckResult& r) {
    auto at = [](SuperpositionKind k) {
      return assemble(validate_scenario(de_sitter_distances(0.2, 2.5, 0.0, 3.53, 1.0, k)));
    };
    const double ce0 = std::abs(at(CauseEffect{0.0}).m);
    const double ce6 = std::abs(at(CauseEffect{6.0}).m);
    const double pf0 = std::abs(at(PastFuture{0.0}).m);
    double pf_max = 0.0;
    for (int i = 0; i <= 16; ++i) pf_max = std::max(pf_max, std::abs(at(PastFuture{4.0 + 0.25 * i}).m));
    const double p_ratio = at(PastFuture{6.0}).p_a / at(PastFuture{0.0}).p_a;
    const bool decay = ce6 / ce0 < 1e-6;
    const bool revival = pf_max >= 0.5 * pf0;
    const bool half = std::abs(p_ratio - 0.5) <= 0.005;
    r.passed = decay && revival && half;
    r.measured = "|M_CE(6)|/|M_CE(0)| " + sci(ce6 / ce0) + (decay ? "" : " FAIL") +
                 "; max|M_PF|/|M_PF(0)| " + fixed(pf_max / pf0, 4) + (revival ? "" : " FAIL") +
                 "; P_D(6)/P_D(0) " + fixed(p_ratio, 4) + (half ? "" : " FAIL");
  });
}

CheckResult phase_sweep() {
  return run_check("C7", "relative phase: C maximal at dphi = 0, exactly 0 at dphi = pi",
                   "every R_D on the grid, < 60 s", [](CheckResult& r) {
    const auto base = de_sitter_angles(0.2, 0.5, kPi / 2.0, kPi / 6.0, 0.02, PhasedSpatial{0.0});
    const auto rows = sweep(base, {Axis{Param::R_D, 0.5, 4.5, 9, Spacing::Linear},
                                   Axis{Param::dphi, 0.0, 1.75 * kPi, 8, Spacing::Linear}});
    bool ok = true;
    int entangled = 0;
    for (int i = 0; i < 9; ++i) {
      const double c0 = report(rows[i * 8]).concurrence;
      const double cpi = report(rows[i * 8 + 4]).concurrence;
      if (c0 > 0.0) ++entangled;
      ok = ok && cpi == 0.0;
      for (int k = 1; k < 8; ++k) ok = ok && report(rows[i * 8 + k]).concurrence <= c0;
    }
    r.passed = ok;
    r.measured = std::string(ok ? "holds" : "violated") + " on 9 R_D values (" +
                 std::to_string(entangled) + " with C(0) > 0)";
  });
}

CheckResult overlap_peak() {
  return run_check("C8", "mutual information peaks where the inner branches overlap (L_M = L_S)",
                   "local max within 0.1 of L_M = 2.5, < 60 s", [](CheckResult& r) {
    const auto rows = sweep(thermal(0.2, 2.5, 2.5, -6.0),
                            {Axis{Param::L_M, 2.0, 3.0, 21, Spacing::Linear}});
    std::vector<double> mi;
    for (const auto& row : rows) mi.push_back(report(row).mutual_information);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < mi.size(); ++i) {
      if (mi[i] > mi[i - 1] && mi[i] >= mi[i + 1]) peaks.push_back(rows[i].values[0]);
    }
    const bool near = std::any_of(peaks.begin(), peaks.end(),
                                  [](double x) { return std::abs(x - 2.5) <= 0.1 + 1e-12; });
    r.passed = near;
    r.measured = "local maxima at L_M = " + list(peaks, 2) + "; I(2.45, 2.5, 2.55) = " +
                 fixed(mi[9], 5) + " " + fixed(mi[10], 5) + " " + fixed(mi[11], 5);
  });
}

CheckResult oracle_equivalence() {
  return run_check("C9", "adaptive + extrapolation agrees with the principal-value oracle",
                   "rel 1e-4 on 27 (rate, Omega, L) points x 8 integrand families, < 120 s",
                   [](CheckResult& r) {
    QuadratureConfig q;
    double worst = 0.0;
    int count = 0;
    for (double rate : {0.2, 1.0, 3.0}) {
      for (double omega : {-2.0, 0.1, 1.0}) {
        for (double L : {0.5, 1.36, 3.0}) {
          std::vector<IntegralSpec> specs;
          for (auto fam : {Family::DeSitterLocal, Family::ThermalLocal, Family::DeSitterOffset,
                           Family::ThermalOffset}) {
            IntegralSpec s;
            s.correlator = {fam, rate, L, 0.0};
            s.omega = omega;
            specs.push_back(s);
          }
          for (auto fam : {Family::DeSitterOffset, Family::ThermalOffset}) {
            IntegralSpec s;
            s.correlator = {fam, rate, L, 0.0};
            s.domain = Domain::HalfLine;
            specs.push_back(s);
          }
          IntegralSpec cosh_half = specs[4];
          cosh_half.envelope = Envelope::GaussianCosh;
          cosh_half.tau0 = 1.5;
          specs.push_back(cosh_half);
          IntegralSpec cosh_local = specs[0];
          cosh_local.envelope = Envelope::GaussianCosh;
          cosh_local.tau0 = 1.5;
          specs.push_back(cosh_local);
          for (const auto& s : specs) {
            const cplx a = integrate_extrapolated(s, q).value;
            const cplx o = pv_oracle(s, q).value;
            worst = std::max(worst, std::abs(a - o) / std::abs(o));
            ++count;
          }
        }
      }
    }
    r.passed = worst < 1e-4;
    r.measured = "worst rel " + sci(worst) + " over " + std::to_string(count) + " integrals";
  });
}

CheckResult invariant_suite() {
  return run_check("C10", "module invariant suite", "all pass", [](CheckResult& r) {
    int passed = 0;
    std::string failed;
    const auto checks = fast_checks();
    for (const auto& c : checks) {
      if (c.passed) {
        ++passed;
      } else {
        failed += " " + c.id;
      }
    }
    r.passed = passed == static_cast<int>(checks.size());
    r.measured = std::to_string(passed) + "/" + std::to_string(checks.size()) + " pass" +
                 (failed.empty() ? "" : "; failed:" + failed);
  });
}

}  // namespace

CheckResult acceptance_criterion(int n) {
  static const double bounds[kCriteria] = {10, 10, 5, 60, 120, 60, 60, 60, 120, 600};
  CheckResult r;
  switch (n) {
    case 1: r = planck_limit(); break;
    case 2: r = detailed_balance(); break;
    case 3: r = beta_kappa(); break;
    case 4: r = spatial_vs_separation(); break;
    case 5: r = temperature_no_go(); break;
    case 6: r = temporal_envelopes(); break;
    case 7: r = phase_sweep(); break;
    case 8: r = overlap_peak(); break;
    case 9: r = oracle_equivalence(); break;
    case 10: r = invariant_suite(); break;
    default: throw Error(ErrorCode::Schema, "no criterion " + std::to_string(n));
  }
  if (r.seconds >= bounds[n - 1]) {
    r.passed = false;
    r.measured += "; runtime " + fixed(r.seconds, 1) + " s over bound";
  }
  return r;
}

}  // namespace harvest
