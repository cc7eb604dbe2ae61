#include "harvest/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace harvest {

using nlohmann::json;

namespace {

const std::map<std::string, Param, std::less<>> kParams = {
    {"l", Param::l},         {"R_D", Param::R_D},     {"theta_S", Param::theta_S},
    {"theta_M", Param::theta_M}, {"L_S", Param::L_S}, {"L_M", Param::L_M},
    {"Omega", Param::Omega}, {"kappa", Param::kappa}, {"tau0", Param::tau0},
    {"dphi", Param::dphi}};

[[noreturn]] void schema(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::Schema, field + ": " + msg);
}

double number(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number()) schema(path + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return number(j, key, "");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) schema(path + key, "unknown key");
  }
}

Spacetime parse_spacetime(const json& j) {
  if (!j.contains("spacetime")) schema("spacetime", "missing (de_sitter | thermal)");
  const std::string kind = j.at("spacetime").get<std::string>();
  if (kind == "thermal") {
    for (const char* k : {"l_sigma", "R_D/sigma", "theta_S", "theta_M", "angles"}) {
      if (j.contains(k)) schema(k, "not a thermal parameter");
    }
    if (!j.contains("kappa_sigma")) schema("kappa_sigma", "missing");
    if (!j.contains("L_M/sigma")) schema("L_M/sigma", "missing");
    return ThermalGeometry{number(j, "kappa_sigma", ""), number_or(j, "L_S/sigma", 0.0),
                           number(j, "L_M/sigma", "")};
  }
  if (kind != "de_sitter") schema("spacetime", "expected de_sitter or thermal, got '" + kind + "'");
  if (j.contains("kappa_sigma")) schema("kappa_sigma", "not a de Sitter parameter");
  for (const char* k : {"l_sigma", "R_D/sigma"}) {
    if (!j.contains(k)) schema(k, "missing");
  }
  DeSitterGeometry ds;
  ds.l = number(j, "l_sigma", "");
  ds.R_D = number(j, "R_D/sigma", "");
  const bool angles = j.contains("angles");
  const bool thetas = j.contains("theta_S") || j.contains("theta_M");
  const bool dists = j.contains("L_S/sigma") || j.contains("L_M/sigma");
  if (angles + thetas + dists != 1) {
    schema("angles", "give exactly one of: angles{}, theta_S/theta_M, L_S/sigma / L_M/sigma");
  }
  if (angles) {
    const auto& a = j.at("angles");
    reject_unknown(a, {"theta_1", "theta_2", "theta_1p", "theta_2p"}, "angles.");
    ds.layout = AngleLayout{number(a, "theta_1", "angles."), number(a, "theta_2", "angles."),
                            number(a, "theta_1p", "angles."), number(a, "theta_2p", "angles.")};
  } else if (thetas) {
    if (!j.contains("theta_M")) schema("theta_M", "missing");
    ds.layout = symmetric_layout(number_or(j, "theta_S", 0.0), number(j, "theta_M", ""));
  } else {
    if (!j.contains("L_M/sigma")) schema("L_M/sigma", "missing");
    ds.layout = DistanceLayout{number_or(j, "L_S/sigma", 0.0), number(j, "L_M/sigma", "")};
  }
  return ds;
}

SuperpositionKind parse_kind(const json& j) {
  const std::string kind = j.value("superposition", std::string("spatial"));
  const double tau0 = number_or(j, "tau0/sigma", 0.0);
  const double dphi = number_or(j, "dphi", 0.0);
  if (j.contains("tau0/sigma") && kind != "past_future" && kind != "cause_effect") {
    schema("tau0/sigma", "only valid for past_future or cause_effect");
  }
  if (j.contains("dphi") && kind != "phased") schema("dphi", "only valid for phased");
  if (kind == "spatial") return Spatial{};
  if (kind == "past_future") return PastFuture{tau0};
  if (kind == "cause_effect") return CauseEffect{tau0};
  if (kind == "classical") return ClassicalSingle{};
  if (kind == "phased") return PhasedSpatial{dphi};
  schema("superposition", "unknown kind '" + kind + "'");
}

QuadratureConfig parse_quadrature(const json& j) {
  QuadratureConfig q;
  if (!j.contains("quadrature")) return q;
  const auto& o = j.at("quadrature");
  reject_unknown(o, {"epsilon_ladder", "s_max/sigma", "rel_tol", "backend", "max_panels"},
                 "quadrature.");
  if (o.contains("epsilon_ladder")) {
    if (!o.at("epsilon_ladder").is_array()) schema("quadrature.epsilon_ladder", "expected an array");
    q.epsilon_ladder = o.at("epsilon_ladder").get<std::vector<double>>();
  }
  q.s_max = number_or(o, "s_max/sigma", q.s_max);
  q.rel_tol = number_or(o, "rel_tol", q.rel_tol);
  if (o.contains("max_panels")) q.max_panels = o.at("max_panels").get<long>();
  const std::string backend = o.value("backend", std::string("adaptive"));
  if (backend == "oracle") {
    q.backend = Backend::Oracle;
  } else if (backend != "adaptive") {
    schema("quadrature.backend", "expected adaptive or oracle");
  }
  return q;
}

bool axis_applies(Param p, const Scenario& s) {
  const bool th = std::holds_alternative<ThermalGeometry>(s.spacetime);
  switch (p) {
    case Param::l:
    case Param::R_D:
    case Param::theta_S:
    case Param::theta_M:
      return !th;
    case Param::kappa:
      return th;
    case Param::tau0:
      return std::holds_alternative<PastFuture>(s.kind) || std::holds_alternative<CauseEffect>(s.kind);
    case Param::dphi:
      return std::holds_alternative<PhasedSpatial>(s.kind);
    default:
      return true;
  }
}

std::vector<Axis> parse_axes(const json& sweep, const Scenario& base) {
  std::vector<Axis> axes;
  if (!sweep.contains("axes")) schema("sweep.axes", "missing");
  const auto& arr = sweep.at("axes");
  if (!arr.is_array() || arr.empty() || arr.size() > 2) schema("sweep.axes", "expected 1 or 2 axes");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "sweep.axes[" + std::to_string(i) + "].";
    const auto& a = arr[i];
    reject_unknown(a, {"name", "min", "max", "count", "spacing"}, path);
    if (!a.contains("name")) schema(path + "name", "missing");
    const std::string name = a.at("name").get<std::string>();
    const auto it = kParams.find(name);
    if (it == kParams.end()) schema(path + "name", "unknown axis '" + name + "'");
    Axis ax;
    ax.param = it->second;
    if (!axis_applies(ax.param, base)) schema(path + "name", "axis '" + name + "' does not apply here");
    for (const char* k : {"min", "max", "count"}) {
      if (!a.contains(k)) schema(path + k, "missing");
    }
    ax.min = number(a, "min", path);
    ax.max = number(a, "max", path);
    ax.count = a.at("count").get<int>();
    if (ax.count < 2) schema(path + "count", "must be >= 2");
    const std::string spacing = a.value("spacing", std::string("linear"));
    if (spacing == "log") {
      ax.spacing = Spacing::Log;
      if (!(ax.min > 0.0 && ax.max > 0.0)) schema(path + "spacing", "log spacing needs min, max > 0");
    } else if (spacing != "linear") {
      schema(path + "spacing", "expected linear or log");
    }
    axes.push_back(ax);
  }
  if (axes.size() == 2 && axes[0].param == axes[1].param) schema("sweep.axes[1].name", "duplicate axis");
  return axes;
}

OutputSelection parse_outputs(const json& sweep) {
  OutputSelection o;
  if (!sweep.contains("outputs")) return o;
  o = OutputSelection{false, false, false, false, false, false};
  for (const auto& v : sweep.at("outputs")) {
    const std::string name = v.get<std::string>();
    if (name == "P_D") o.p_d = true;
    else if (name == "abs_M") o.abs_m = true;
    else if (name == "abs_L") o.abs_l = true;
    else if (name == "C") o.concurrence = true;
    else if (name == "I") o.mutual_information = true;
    else if (name == "breakdown") o.breakdown = true;
    else schema("sweep.outputs", "unknown output '" + name + "'");
  }
  return o;
}

json outputs_json(const OutputSelection& o) {
  json out = json::array();
  if (o.p_d) out.push_back("P_D");
  if (o.abs_m) out.push_back("abs_M");
  if (o.abs_l) out.push_back("abs_L");
  if (o.concurrence) out.push_back("C");
  if (o.mutual_information) out.push_back("I");
  if (o.breakdown) out.push_back("breakdown");
  return out;
}

}  // namespace

double Axis::value(int i) const {
  const double t = static_cast<double>(i) / (count - 1);
  if (spacing == Spacing::Log) return min * std::pow(max / min, t);
  return min + (max - min) * t;
}

std::string_view param_name(Param p) {
  for (const auto& [name, q] : kParams) {
    if (q == p) return name;
  }
  return "?";
}

std::string param_column(Param p) {
  switch (p) {
    case Param::l: return "l_times_sigma";
    case Param::R_D: return "R_D_over_sigma";
    case Param::theta_S: return "theta_S_rad";
    case Param::theta_M: return "theta_M_rad";
    case Param::L_S: return "L_S_over_sigma";
    case Param::L_M: return "L_M_over_sigma";
    case Param::Omega: return "Omega_times_sigma";
    case Param::kappa: return "kappa_times_sigma";
    case Param::tau0: return "tau0_over_sigma";
    case Param::dphi: return "dphi_rad";
  }
  return "?";
}

void apply_param(Scenario& s, Param p, double v) {
  if (auto* th = std::get_if<ThermalGeometry>(&s.spacetime)) {
    if (p == Param::kappa) th->kappa = v;
    if (p == Param::L_S) th->L_S = v;
    if (p == Param::L_M) th->L_M = v;
  } else {
    auto& ds = std::get<DeSitterGeometry>(s.spacetime);
    if (p == Param::l) ds.l = v;
    if (p == Param::R_D) ds.R_D = v;
    if (p == Param::theta_S || p == Param::theta_M) {
      AngleLayout a = symmetric_layout(0.0, 0.0);
      if (const auto* cur = std::get_if<AngleLayout>(&ds.layout)) {
        a = symmetric_layout(cur->theta_2 - cur->theta_1, cur->theta_1p - cur->theta_1);
      }
      const double theta_S = p == Param::theta_S ? v : a.theta_2;
      const double theta_M = p == Param::theta_M ? v : a.theta_1p;
      ds.layout = symmetric_layout(theta_S, theta_M);
    }
    if (p == Param::L_S || p == Param::L_M) {
      DistanceLayout d;
      if (const auto* cur = std::get_if<DistanceLayout>(&ds.layout)) {
        d = *cur;
      } else {
        const auto& a = std::get<AngleLayout>(ds.layout);
        d = {std::abs(chord_distance(ds.R_D, a.theta_2 - a.theta_1)),
             chord_distance(ds.R_D, a.theta_1p - a.theta_1)};
      }
      (p == Param::L_S ? d.L_S : d.L_M) = v;
      ds.layout = d;
    }
  }
  if (p == Param::Omega) s.detectors.omega = v;
  if (p == Param::tau0) {
    if (auto* pf = std::get_if<PastFuture>(&s.kind)) pf->tau0 = v;
    if (auto* ce = std::get_if<CauseEffect>(&s.kind)) ce->tau0 = v;
  }
  if (p == Param::dphi) {
    if (auto* ph = std::get_if<PhasedSpatial>(&s.kind)) ph->dphi = v;
  }
}

json to_json(const QuadratureConfig& q) {
  return {{"epsilon_ladder", q.epsilon_ladder},
          {"s_max/sigma", q.s_max},
          {"rel_tol", q.rel_tol},
          {"backend", q.backend == Backend::Oracle ? "oracle" : "adaptive"},
          {"max_panels", q.max_panels}};
}

json to_json(const Scenario& s) {
  json j;
  if (const auto* th = std::get_if<ThermalGeometry>(&s.spacetime)) {
    j["spacetime"] = "thermal";
    j["kappa_sigma"] = th->kappa;
    j["L_S/sigma"] = th->L_S;
    j["L_M/sigma"] = th->L_M;
  } else {
    const auto& ds = std::get<DeSitterGeometry>(s.spacetime);
    j["spacetime"] = "de_sitter";
    j["l_sigma"] = ds.l;
    j["R_D/sigma"] = ds.R_D;
    if (const auto* a = std::get_if<AngleLayout>(&ds.layout)) {
      j["angles"] = {{"theta_1", a->theta_1}, {"theta_2", a->theta_2},
                     {"theta_1p", a->theta_1p}, {"theta_2p", a->theta_2p}};
    } else {
      const auto& d = std::get<DistanceLayout>(ds.layout);
      j["L_S/sigma"] = d.L_S;
      j["L_M/sigma"] = d.L_M;
    }
  }
  j["Omega_sigma"] = s.detectors.omega;
  j["sigma"] = s.detectors.width;
  j["lambda"] = s.detectors.lambda;
  std::visit(
      [&j](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Spatial>) j["superposition"] = "spatial";
        if constexpr (std::is_same_v<K, ClassicalSingle>) j["superposition"] = "classical";
        if constexpr (std::is_same_v<K, PastFuture>) {
          j["superposition"] = "past_future";
          j["tau0/sigma"] = k.tau0;
        }
        if constexpr (std::is_same_v<K, CauseEffect>) {
          j["superposition"] = "cause_effect";
          j["tau0/sigma"] = k.tau0;
        }
        if constexpr (std::is_same_v<K, PhasedSpatial>) {
          j["superposition"] = "phased";
          j["dphi"] = k.dphi;
        }
      },
      s.kind);
  j["quadrature"] = to_json(s.quadrature);
  return j;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("(document)", e.what());
  }
  if (!j.is_object()) schema("(document)", "expected a JSON object");
  reject_unknown(j,
                 {"spacetime", "l_sigma", "R_D/sigma", "angles", "theta_S", "theta_M", "L_S/sigma",
                  "L_M/sigma", "kappa_sigma", "Omega_sigma", "sigma", "lambda", "superposition",
                  "tau0/sigma", "dphi", "quadrature", "sweep"},
                 "");
  RunConfig cfg;
  try {
    cfg.base.spacetime = parse_spacetime(j);
    if (!j.contains("Omega_sigma")) schema("Omega_sigma", "missing");
    cfg.base.detectors.omega = number(j, "Omega_sigma", "");
    cfg.base.detectors.width = number_or(j, "sigma", 1.0);
    cfg.base.detectors.lambda = number_or(j, "lambda", 1.0);
    cfg.base.kind = parse_kind(j);
    cfg.base.quadrature = parse_quadrature(j);
    if (j.contains("sweep")) {
      const auto& sw = j.at("sweep");
      reject_unknown(sw, {"axes", "outputs", "baseline"}, "sweep.");
      cfg.axes = parse_axes(sw, cfg.base);
      cfg.outputs = parse_outputs(sw);
      cfg.baseline = sw.value("baseline", false);
    }
  } catch (const json::exception& e) {
    schema("(document)", e.what());
  }
  validate_scenario(cfg.base);

  cfg.echo = to_json(cfg.base);
  if (!cfg.axes.empty()) {
    json axes = json::array();
    for (const auto& a : cfg.axes) {
      axes.push_back({{"name", param_name(a.param)},
                      {"min", a.min},
                      {"max", a.max},
                      {"count", a.count},
                      {"spacing", a.spacing == Spacing::Log ? "log" : "linear"}});
    }
    cfg.echo["sweep"] = {{"axes", axes}, {"outputs", outputs_json(cfg.outputs)}, {"baseline", cfg.baseline}};
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace harvest
