#pragma once

#include <string>
#include <vector>

#include "harvest/correlators.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/scenario.hpp"

namespace harvest {

enum class PastFuturePhase {
  Printed,    // cos(tau0 Omega / 2)
  Rederived,  // cos(2 Omega tau0)
};

inline constexpr PastFuturePhase kPastFuturePhase = PastFuturePhase::Printed;

double past_future_phase(double tau0, double omega, PastFuturePhase convention = kPastFuturePhase);

// A named additive piece of a matrix element, prefactors included.
struct Term {
  std::string name;
  cplx value;
  double abs_err = 0.0;
};

struct Element {
  cplx value;
  double abs_err = 0.0;
  std::vector<Term> terms;
};

struct DensityMatrixElements {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_err = 0.0;
  cplx m;
  double m_err = 0.0;
  cplx l;
  double l_err = 0.0;
  bool l_available = true;
  Element p_detail;
  Element m_detail;
  Element l_detail;
  std::vector<std::string> flags;
};

Element transition_probability(const ValidatedScenario& vs);
Element entangling_term(const ValidatedScenario& vs);
// Throws GEOMETRY_UNAVAILABLE when the cross-branch distances are undefined.
Element nonlocal_term(const ValidatedScenario& vs);

// Throws REALITY_VIOLATION when Im P_D is not negligible.
DensityMatrixElements assemble(const ValidatedScenario& vs);

}  // namespace harvest
