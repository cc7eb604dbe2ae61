#pragma once

#include <functional>
#include <vector>

#include "harvest/correlators.hpp"
#include "harvest/scenario.hpp"

namespace harvest {

enum class Domain { FullLine, HalfLine };

// Gaussian: e^{-s^2/(4 sigma^2)}.
// GaussianCosh: e^{-tau0^2/sigma^2} e^{-s^2/(4 sigma^2)} cosh(s tau0/sigma^2), i.e. the
// cosh factor with its damping folded in.
enum class Envelope { Gaussian, GaussianCosh };

// Integral of envelope(s) e^{-i omega s} W(s) over the domain.
struct IntegralSpec {
  CorrelatorSpec correlator;  // epsilon is supplied per rung
  double omega = 0.0;
  double width = 1.0;
  double tau0 = 0.0;
  Envelope envelope = Envelope::Gaussian;
  Domain domain = Domain::FullLine;
};

struct PoleTerm {
  double location = 0.0;
  cplx residue;       // of W at the pole
  cplx contribution;  // i pi residue envelope(s*) e^{-i omega s*}, or the double-pole term
};

struct QuadratureResult {
  cplx value;
  double abs_err = 0.0;
  long panels = 0;
  double epsilon = 0.0;  // 0 for extrapolated or principal-value results
  std::vector<double> poles;
  std::vector<PoleTerm> pole_terms;  // oracle only
  std::vector<cplx> rungs;           // extrapolation only
};

// Integration window [-S, S] or [0, S], S = s_max sigma + 2|tau0| for the cosh envelope.
double window(const IntegralSpec& spec, const QuadratureConfig& cfg);

double envelope_value(const IntegralSpec& spec, double s);
cplx integrand(const IntegralSpec& spec, double s);

// Globally adaptive Gauss-Kronrod (10/21) on [a, b] with the given initial breakpoints.
// Stops once the error above the summed roundoff floor meets the tolerance; abs_err still
// includes the floor. Throws NON_CONVERGED when the panel budget runs out.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    std::vector<double> breakpoints, double rel_tol,
                                    long max_panels);

QuadratureResult integrate_fixed_epsilon(const IntegralSpec& spec, const QuadratureConfig& cfg,
                                         double epsilon);

QuadratureResult integrate_extrapolated(const IntegralSpec& spec, const QuadratureConfig& cfg);

// eps -> 0+ limit by pole subtraction: smooth remainder on composite Gauss-Legendre
// panels (refined until two passes agree), plus principal value and i pi residue terms.
QuadratureResult pv_oracle(const IntegralSpec& spec, const QuadratureConfig& cfg);

// Backend dispatch on cfg.backend.
QuadratureResult integrate(const IntegralSpec& spec, const QuadratureConfig& cfg);

struct PolyFit {
  std::vector<cplx> coefficients;  // v0, v1, ...
  double residual = 0.0;           // max |v_i - fit(eps_i)|
};

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<cplx>& y, int degree);

int extrapolation_degree(std::size_t rungs);

}  // namespace harvest
