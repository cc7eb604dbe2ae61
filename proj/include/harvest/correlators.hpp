#pragma once

#include <complex>
#include <vector>

namespace harvest {

using cplx = std::complex<double>;

enum class Family { DeSitterLocal, DeSitterOffset, ThermalLocal, ThermalOffset };

// Below this |kappa L| the thermal offset form is replaced by the local one.
inline constexpr double kSmallSeparation = 1e-4;

struct CorrelatorSpec {
  Family family = Family::DeSitterLocal;
  double rate = 1.0;        // beta or kappa
  double separation = 0.0;  // L, ignored by local families
  double epsilon = 0.0;
};

// eps shifts the sinh argument in the de Sitter (and thermal local) forms and s itself
// in the thermal offset form.
// W(s) = -beta^2/(16 pi^2) / sinh^2(beta s/2 - i eps)
cplx eval_ds_local(double s, double beta, double eps);
// W(s) = -beta^2/(16 pi^2) / (sinh^2(beta s/2 - i eps) - (beta L/2)^2)
cplx eval_ds_offset(double s, double beta, double L, double eps);
// W(s) = kappa/(16 pi^2 L) [coth(kappa(L - s')/2) + coth(kappa(L + s')/2)], s' = s - i eps
cplx eval_th_offset(double s, double kappa, double L, double eps);

cplx evaluate(const CorrelatorSpec& spec, double s);

// Collapses degenerate offsets onto the local family (L = 0 in de Sitter,
// |kappa L| below kSmallSeparation in the thermal case).
CorrelatorSpec normalized(const CorrelatorSpec& spec);

// Real parts of the near-real-axis singularities, ascending.
std::vector<double> pole_locations(const CorrelatorSpec& spec);

// Distance of those singularities above the real axis for the given epsilon.
double pole_offset(const CorrelatorSpec& spec);

bool is_local(Family family);

}  // namespace harvest
