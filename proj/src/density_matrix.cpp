#include "harvest/density_matrix.hpp"

#include <cmath>
#include <numbers>

namespace harvest {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

struct Context {
  const ValidatedScenario& vs;
  const Scenario& sc;
  const DerivedGeometry& geo;
  double sigma;
  double omega;
  double lambda2;
};

Context context(const ValidatedScenario& vs) {
  const auto& sc = vs.scenario();
  return {vs, sc, vs.geometry(), sc.detectors.width, sc.detectors.omega,
          sc.detectors.lambda * sc.detectors.lambda};
}

IntegralSpec spec_for(const Context& c, bool local, double L, Domain domain, double tau0) {
  IntegralSpec s;
  const bool th = c.geo.thermal;
  if (local) {
    s.correlator.family = th ? Family::ThermalLocal : Family::DeSitterLocal;
  } else {
    s.correlator.family = th ? Family::ThermalOffset : Family::DeSitterOffset;
    s.correlator.separation = L;
  }
  s.correlator.rate = c.geo.rate;
  s.width = c.sigma;
  s.omega = domain == Domain::FullLine ? c.omega : 0.0;
  s.domain = domain;
  if (tau0 != 0.0) {
    s.envelope = Envelope::GaussianCosh;
    s.tau0 = tau0;
  }
  return s;
}

Term term(const Context& c, const std::string& name, cplx factor, const IntegralSpec& spec) {
  const QuadratureResult r = integrate(spec, c.sc.quadrature);
  return {name, factor * r.value, std::abs(factor) * r.abs_err};
}

Element combine(std::vector<Term> terms) {
  Element e;
  for (const auto& t : terms) {
    e.value += t.value;
    e.abs_err += t.abs_err;
  }
  e.terms = std::move(terms);
  return e;
}

std::optional<double> delay(const SuperpositionKind& kind) {
  if (const auto* pf = std::get_if<PastFuture>(&kind)) return pf->tau0;
  if (const auto* ce = std::get_if<CauseEffect>(&kind)) return ce->tau0;
  return std::nullopt;
}

}  // namespace

double past_future_phase(double tau0, double omega, PastFuturePhase convention) {
  return convention == PastFuturePhase::Printed ? std::cos(tau0 * omega / 2.0)
                                                : std::cos(2.0 * omega * tau0);
}

Element transition_probability(const ValidatedScenario& vs) {
  const Context c = context(vs);
  const double full = c.lambda2 * kSqrtPi * c.sigma;
  const double half = full / 2.0;
  const auto local = spec_for(c, true, 0.0, Domain::FullLine, 0.0);
  const auto& kind = c.sc.kind;

  if (std::holds_alternative<ClassicalSingle>(kind)) return combine({term(c, "local", full, local)});
  if (const auto tau0 = delay(kind)) {
    return combine({term(c, "local", half, local),
                    term(c, "interference", half, spec_for(c, true, 0.0, Domain::FullLine, *tau0))});
  }
  double weight = 1.0;
  if (const auto* ph = std::get_if<PhasedSpatial>(&kind)) weight = std::cos(ph->dphi);
  return combine({term(c, "local", half, local),
                  term(c, "interference", half * weight,
                       spec_for(c, false, c.geo.L_S, Domain::FullLine, 0.0))});
}

Element entangling_term(const ValidatedScenario& vs) {
  const Context c = context(vs);
  const double base =
      -2.0 * c.lambda2 * kSqrtPi * c.sigma * std::exp(-c.sigma * c.sigma * c.omega * c.omega);
  const auto half_line = spec_for(c, false, c.geo.L_M, Domain::HalfLine, 0.0);
  const auto& kind = c.sc.kind;

  if (const auto* ce = std::get_if<CauseEffect>(&kind)) {
    return combine({term(c, "entangling_pair", -base,
                         spec_for(c, false, c.geo.L_M, Domain::HalfLine, ce->tau0))});
  }
  double factor = 1.0;
  if (const auto* pf = std::get_if<PastFuture>(&kind)) factor = past_future_phase(pf->tau0, c.omega);
  if (const auto* ph = std::get_if<PhasedSpatial>(&kind)) factor = (1.0 + std::cos(ph->dphi)) / 2.0;
  return combine({term(c, "entangling_pair", base * factor, half_line)});
}

Element nonlocal_term(const ValidatedScenario& vs) {
  const Context c = context(vs);
  const double full = c.lambda2 * kSqrtPi * c.sigma;
  const double half = full / 2.0;
  const auto pair = spec_for(c, false, c.geo.L_M, Domain::FullLine, 0.0);
  const auto& kind = c.sc.kind;

  if (std::holds_alternative<ClassicalSingle>(kind)) return combine({term(c, "entangling_pair", full, pair)});
  if (const auto tau0 = delay(kind)) {
    return combine({term(c, "entangling_pair", half, pair),
                    term(c, "cross_delayed", half,
                         spec_for(c, false, c.geo.L_M, Domain::FullLine, *tau0))});
  }
  if (!c.geo.cross_outer || !c.geo.cross_inner) {
    throw Error(ErrorCode::GeometryUnavailable,
                "cross-branch distances undefined for a formal distance layout beyond 2 R_D");
  }
  const auto outer = spec_for(c, false, *c.geo.cross_outer, Domain::FullLine, 0.0);
  const auto inner = spec_for(c, false, *c.geo.cross_inner, Domain::FullLine, 0.0);
  cplx w_outer = 0.5, w_inner = 0.5;
  if (const auto* ph = std::get_if<PhasedSpatial>(&kind)) {
    w_outer = 0.5 * std::polar(1.0, ph->dphi);
    w_inner = 0.5 * std::polar(1.0, -ph->dphi);
  }
  return combine({term(c, "entangling_pair", half, pair), term(c, "outer", half * w_outer, outer),
                  term(c, "inner", half * w_inner, inner)});
}

DensityMatrixElements assemble(const ValidatedScenario& vs) {
  DensityMatrixElements d;
  d.p_detail = transition_probability(vs);
  const cplx p = d.p_detail.value;
  if (std::abs(p.imag()) > 1e-6 * std::abs(p) + 1e-12) {
    throw Error(ErrorCode::RealityViolation, "Im P_D = " + std::to_string(p.imag()) +
                                                 " against Re P_D = " + std::to_string(p.real()));
  }
  d.p_err = d.p_detail.abs_err;
  d.p_a = d.p_b = std::max(p.real(), 0.0);
  if (p.real() < 0.0) d.flags.push_back("PROBABILITY_CLAMPED");

  d.m_detail = entangling_term(vs);
  d.m = d.m_detail.value;
  d.m_err = d.m_detail.abs_err;

  try {
    d.l_detail = nonlocal_term(vs);
    d.l = d.l_detail.value;
    d.l_err = d.l_detail.abs_err;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GeometryUnavailable) throw;
    d.l_available = false;
    d.l = cplx(std::nan(""), std::nan(""));
    d.l_err = std::nan("");
    d.flags.push_back("NONLOCAL_UNAVAILABLE");
  }

  const bool delayed = delay(vs.scenario().kind).has_value();
  if (vs.thermal() && delayed) d.flags.push_back("EXTENSION_THERMAL_TEMPORAL");
  return d;
}

}  // namespace harvest
