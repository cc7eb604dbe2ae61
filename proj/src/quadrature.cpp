#include "harvest/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace harvest {

namespace {

// 21-point Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208573411900, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEpmach = std::numeric_limits<double>::epsilon();
constexpr double kAbsFloor = 1e-14;

struct Panel {
  double a;
  double b;
  cplx value;
  double err;
  double floor;  // roundoff limit of err
};

Panel gk21(const std::function<cplx(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<cplx, 21> fv;
  fv[20] = f(center);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }
  cplx resk = fv[20] * kWgk[10];
  cplx resg = 0.0;
  double resabs = std::abs(fv[20]) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const cplx pair = fv[2 * j] + fv[2 * j + 1];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const cplx reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fv[20] - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
  }
  const double h = std::abs(half);
  double err = std::abs((resk - resg) * half);
  resasc *= h;
  resabs *= h;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double floor = 0.0;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEpmach)) {
    floor = 50.0 * kEpmach * resabs;
    err = std::max(floor, err);
  }
  return {a, b, resk * half, err, floor};
}

struct Totals {
  cplx value;
  double err = 0.0;
  double floor = 0.0;
};

Totals sum_panels(const std::vector<Panel>& panels) {
  Totals t;
  for (const auto& p : panels) {
    t.value += p.value;
    t.err += p.err;
    t.floor += p.floor;
  }
  return t;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    std::vector<double> breakpoints, double rel_tol,
                                    long max_panels) {
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> edges;
  for (double x : breakpoints) {
    if (x < a || x > b) continue;
    if (!edges.empty() && x - edges.back() <= 1e-15 * std::max(1.0, std::abs(x))) continue;
    edges.push_back(x);
  }
  if (edges.back() < b) edges.back() = b;

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) panels.push_back(gk21(f, edges[i], edges[i + 1]));

  // Panels are ranked by error above their roundoff floor, which subdivision cannot remove.
  auto worse = [&](std::size_t i, std::size_t j) {
    const double ei = panels[i].err - panels[i].floor, ej = panels[j].err - panels[j].floor;
    if (ei != ej) return ei < ej;
    return panels[i].a > panels[j].a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  for (std::size_t i = 0; i < panels.size(); ++i) queue.push(i);

  Totals t = sum_panels(panels);
  long iterations = 0;
  auto done = [&] {
    const double tol = rel_tol * std::abs(t.value) + kAbsFloor;
    return t.err <= tol || t.err - t.floor <= tol;
  };
  while (!done()) {
    if (static_cast<long>(panels.size()) >= max_panels) {
      throw Error(ErrorCode::NonConverged,
                  "panel budget " + std::to_string(max_panels) + " exhausted, abs_err " +
                      std::to_string(t.err) + " on |value| " + std::to_string(std::abs(t.value)));
    }
    const std::size_t i = queue.top();
    queue.pop();
    const Panel old = panels[i];
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b)) {
      throw Error(ErrorCode::NonConverged, "panel at s = " + std::to_string(mid) +
                                               " below floating-point resolution");
    }
    panels[i] = gk21(f, old.a, mid);
    panels.push_back(gk21(f, mid, old.b));
    queue.push(i);
    queue.push(panels.size() - 1);
    if (++iterations % 256 == 0) {
      t = sum_panels(panels);
    } else {
      t.value += panels[i].value + panels.back().value - old.value;
      t.err += panels[i].err + panels.back().err - old.err;
      t.floor += panels[i].floor + panels.back().floor - old.floor;
    }
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  t = sum_panels(panels);
  QuadratureResult r;
  r.value = t.value;
  r.abs_err = t.err;
  r.panels = static_cast<long>(panels.size());
  return r;
}

double window(const IntegralSpec& spec, const QuadratureConfig& cfg) {
  double s = cfg.s_max * spec.width;
  if (spec.envelope == Envelope::GaussianCosh) s += 2.0 * std::abs(spec.tau0);
  return s;
}

double envelope_value(const IntegralSpec& spec, double s) {
  const double c = 4.0 * spec.width * spec.width;
  if (spec.envelope == Envelope::Gaussian) return std::exp(-s * s / c);
  const double d = 2.0 * spec.tau0;
  return 0.5 * (std::exp(-(s - d) * (s - d) / c) + std::exp(-(s + d) * (s + d) / c));
}

cplx integrand(const IntegralSpec& spec, double s) {
  const cplx phase = std::polar(1.0, -spec.omega * s);
  return envelope_value(spec, s) * phase * evaluate(spec.correlator, s);
}

QuadratureResult integrate_fixed_epsilon(const IntegralSpec& spec, const QuadratureConfig& cfg,
                                         double epsilon) {
  IntegralSpec rung = spec;
  rung.correlator.epsilon = epsilon;
  rung.correlator = normalized(rung.correlator);
  const double S = window(spec, cfg);
  const double a = spec.domain == Domain::FullLine ? -S : 0.0;

  const double d = pole_offset(rung.correlator);
  std::vector<double> cuts;
  std::vector<double> poles;
  if (spec.domain == Domain::FullLine) cuts.push_back(0.0);
  for (double p : pole_locations(rung.correlator)) {
    if (p < a || p > S) continue;
    poles.push_back(p);
    cuts.push_back(p);
    for (double k : {1.0, 10.0, 100.0}) {
      cuts.push_back(p - k * d);
      cuts.push_back(p + k * d);
    }
  }
  auto f = [&rung](double s) { return integrand(rung, s); };
  QuadratureResult r = integrate_adaptive(f, a, S, cuts, cfg.rel_tol, cfg.max_panels);
  r.epsilon = epsilon;
  r.poles = poles;
  return r;
}

int extrapolation_degree(std::size_t rungs) {
  return static_cast<int>(std::min<std::size_t>(rungs - 2, 3));
}

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<cplx>& y, int degree) {
  const int m = degree + 1;
  const std::size_t n = x.size();
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  // Normal equations on the scaled abscissa, solved by Gaussian elimination.
  std::vector<std::vector<long double>> A(m, std::vector<long double>(m + 2, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    const long double t = x[i] / scale;
    std::vector<long double> pw(m);
    pw[0] = 1.0L;
    for (int j = 1; j < m; ++j) pw[j] = pw[j - 1] * t;
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) A[r][c] += pw[r] * pw[c];
      A[r][m] += pw[r] * y[i].real();
      A[r][m + 1] += pw[r] * y[i].imag();
    }
  }
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    }
    std::swap(A[c], A[piv]);
    for (int r = c + 1; r < m; ++r) {
      const long double k = A[r][c] / A[c][c];
      for (int j = c; j < m + 2; ++j) A[r][j] -= k * A[c][j];
    }
  }
  std::vector<long double> re(m), im(m);
  for (int r = m - 1; r >= 0; --r) {
    long double sr = A[r][m], si = A[r][m + 1];
    for (int j = r + 1; j < m; ++j) {
      sr -= A[r][j] * re[j];
      si -= A[r][j] * im[j];
    }
    re[r] = sr / A[r][r];
    im[r] = si / A[r][r];
  }

  PolyFit fit;
  double p = 1.0;
  for (int j = 0; j < m; ++j) {
    fit.coefficients.emplace_back(static_cast<double>(re[j]) / p, static_cast<double>(im[j]) / p);
    p *= scale;
  }
  for (std::size_t i = 0; i < n; ++i) {
    cplx v = 0.0;
    for (int j = m - 1; j >= 0; --j) v = v * x[i] + fit.coefficients[j];
    fit.residual = std::max(fit.residual, std::abs(v - y[i]));
  }
  return fit;
}

QuadratureResult integrate_extrapolated(const IntegralSpec& spec, const QuadratureConfig& cfg) {
  const auto& ladder = cfg.epsilon_ladder;
  if (ladder.size() < 3) throw Error(ErrorCode::BadEpsilonLadder, "need at least 3 rungs");
  std::vector<QuadratureResult> rungs;
  std::vector<cplx> values;
  long panels = 0;
  for (double eps : ladder) {
    rungs.push_back(integrate_fixed_epsilon(spec, cfg, eps));
    values.push_back(rungs.back().value);
    panels += rungs.back().panels;
  }

  // The first difference may be small by accidental cancellation of the O(eps) and
  // O(eps^2) terms, so monotone shrinking is required from the second difference on.
  for (std::size_t k = 3; k < values.size(); ++k) {
    const double prev = std::abs(values[k - 1] - values[k - 2]);
    const double cur = std::abs(values[k] - values[k - 1]);
    const double noise = 10.0 * (rungs[k].abs_err + rungs[k - 1].abs_err) +
                         1e-12 * std::abs(values[k]) + kAbsFloor;
    if (cur >= prev && cur > noise) {
      throw Error(ErrorCode::NonConverged,
                  "epsilon ladder differences stopped shrinking at rung " + std::to_string(k));
    }
  }

  const PolyFit fit = fit_polynomial(ladder, values, extrapolation_degree(ladder.size()));
  QuadratureResult r;
  r.value = fit.coefficients[0];
  r.abs_err = std::max(fit.residual, rungs.back().abs_err);
  r.panels = panels;
  r.poles = rungs.back().poles;
  r.rungs = values;
  return r;
}

QuadratureResult integrate(const IntegralSpec& spec, const QuadratureConfig& cfg) {
  return cfg.backend == Backend::Oracle ? pv_oracle(spec, cfg) : integrate_extrapolated(spec, cfg);
}

}  // namespace harvest
