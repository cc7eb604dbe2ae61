#include "harvest/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace harvest {

namespace {

std::vector<std::string> term_names(const SuperpositionKind& kind, char element) {
  const bool classical = std::holds_alternative<ClassicalSingle>(kind);
  const bool delayed =
      std::holds_alternative<PastFuture>(kind) || std::holds_alternative<CauseEffect>(kind);
  switch (element) {
    case 'P':
      if (classical) return {"local"};
      return {"local", "interference"};
    case 'M':
      return {"entangling_pair"};
    default:
      if (classical) return {"entangling_pair"};
      if (delayed) return {"entangling_pair", "cross_delayed"};
      return {"entangling_pair", "outer", "inner"};
  }
}

std::vector<std::string> report_columns(const OutputSelection& o, const std::string& prefix) {
  std::vector<std::string> h;
  if (o.p_d) {
    h.push_back(prefix + "P_D_per_lambda2");
    h.push_back(prefix + "P_D_err_per_lambda2");
  }
  if (o.abs_m) {
    h.push_back(prefix + "abs_M_per_lambda2");
    h.push_back(prefix + "abs_M_err_per_lambda2");
  }
  if (o.abs_l) {
    h.push_back(prefix + "abs_L_per_lambda2");
    h.push_back(prefix + "abs_L_err_per_lambda2");
  }
  if (o.concurrence) {
    h.push_back(prefix + "concurrence_per_lambda2");
    h.push_back(prefix + "concurrence_err_per_lambda2");
  }
  if (o.mutual_information) h.push_back(prefix + "mutual_information_nats");
  return h;
}

void report_values(std::vector<std::string>& out, const OutputSelection& o,
                   const std::optional<HarvestReport>& r, double lambda2) {
  auto put = [&](double v) { out.push_back(r ? format_double(v) : ""); };
  const HarvestReport empty;
  const HarvestReport& x = r ? *r : empty;
  if (o.p_d) {
    put(x.p_d / lambda2);
    put(x.p_err / lambda2);
  }
  if (o.abs_m) {
    put(x.abs_m / lambda2);
    put(x.m_err / lambda2);
  }
  if (o.abs_l) {
    put(x.abs_l / lambda2);
    put(x.l_err / lambda2);
  }
  if (o.concurrence) {
    put(x.concurrence / lambda2);
    put(x.concurrence_err / lambda2);
  }
  if (o.mutual_information) put(x.mutual_information);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> csv_header(const RunConfig& cfg) {
  std::vector<std::string> h;
  for (std::size_t k = 0; k < cfg.axes.size(); ++k) h.push_back("i" + std::to_string(k));
  for (const auto& a : cfg.axes) h.push_back(param_column(a.param));
  for (const auto& c : report_columns(cfg.outputs, "")) h.push_back(c);
  if (cfg.outputs.breakdown) {
    for (char e : {'P', 'M', 'L'}) {
      const std::string el = e == 'P' ? "P_D" : e == 'M' ? "M" : "L";
      for (const auto& t : term_names(cfg.base.kind, e)) {
        h.push_back(el + "_" + t + "_re_per_lambda2");
        h.push_back(el + "_" + t + "_im_per_lambda2");
      }
    }
  }
  if (cfg.baseline) {
    for (const auto& c : report_columns(cfg.outputs, "baseline_")) h.push_back(c);
  }
  h.push_back("flags");
  h.push_back("error");
  return h;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, const RunConfig& cfg) {
  const auto header = csv_header(cfg);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  const double lambda2 = cfg.base.detectors.lambda * cfg.base.detectors.lambda;
  for (const auto& row : rows) {
    std::vector<std::string> f;
    for (int i : row.index) f.push_back(std::to_string(i));
    for (double v : row.values) f.push_back(format_double(v));
    report_values(f, cfg.outputs, row.report, lambda2);
    if (cfg.outputs.breakdown) {
      const Element* els[3] = {nullptr, nullptr, nullptr};
      if (row.report) {
        els[0] = &row.report->elements.p_detail;
        els[1] = &row.report->elements.m_detail;
        els[2] = &row.report->elements.l_detail;
      }
      int k = 0;
      for (char e : {'P', 'M', 'L'}) {
        const auto names = term_names(cfg.base.kind, e);
        for (const auto& name : names) {
          std::string re, im;
          if (els[k]) {
            for (const auto& t : els[k]->terms) {
              if (t.name == name) {
                re = format_double(t.value.real() / lambda2);
                im = format_double(t.value.imag() / lambda2);
              }
            }
          }
          f.push_back(re);
          f.push_back(im);
        }
        ++k;
      }
    }
    if (cfg.baseline) report_values(f, cfg.outputs, row.baseline, lambda2);
    std::string flags;
    if (row.report) {
      for (const auto& fl : row.report->flags) flags += (flags.empty() ? "" : ";") + fl;
    }
    f.push_back(flags);
    f.push_back(row.error);
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_escape(f[i]);
    out << "\n";
  }
}

nlohmann::json sidecar_metadata(const std::vector<SweepRow>& rows, const RunConfig& cfg,
                                const RunInfo& info) {
  nlohmann::json times = nlohmann::json::array();
  nlohmann::json errors = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    times.push_back(rows[i].seconds);
    if (!rows[i].error.empty()) errors.push_back({{"row", i}, {"detail", rows[i].error_detail}});
  }
  return {{"version", kVersion},
          {"config", cfg.echo},
          {"defaults", to_json(QuadratureConfig{})},
          {"epsilon_ladder", cfg.base.quadrature.epsilon_ladder},
          {"rows", rows.size()},
          {"workers", info.workers},
          {"wall_time_seconds", info.wall_seconds},
          {"row_wall_time_seconds", times},
          {"row_errors", errors},
          {"units", "sigma = 1; P_D, |M|, |L|, concurrence per lambda^2; mutual information in nats at the configured lambda"}};
}

void emit_csv(const std::vector<SweepRow>& rows, const RunConfig& cfg, const std::string& path,
              const RunInfo& info) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  write_csv(out, rows, cfg);
  std::ofstream meta(path + ".meta.json");
  if (!meta) throw Error(ErrorCode::Io, "cannot write " + path + ".meta.json");
  meta << sidecar_metadata(rows, cfg, info).dump(2) << "\n";
  if (!out || !meta) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace harvest
