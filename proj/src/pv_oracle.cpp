#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "harvest/quadrature.hpp"

namespace harvest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNodes = 20;
constexpr int kMaxHalvings = 14;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre by Newton iteration on P_n.
Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = gauss_legendre(kNodes);
  return r;
}

double e1(double x) { return -std::expint(-x); }

// PV of the integral of e^{-u^2/c}/u over [lo, hi], lo < 0 < hi.
double gaussian_pv(double lo, double hi, double c) {
  const double m = std::min(-lo, hi);
  const double M = std::max(-lo, hi);
  const double v = 0.5 * (e1(m * m / c) - e1(M * M / c));
  return hi >= -lo ? v : -v;
}

// 1/sinh^2 x - 1/x^2 for real x.
double inv_sinh2_minus_inv_x2(double x) {
  const double ax = std::abs(x);
  if (ax < 0.1) {
    const double x2 = x * x;
    return -1.0 / 3.0 + x2 * (1.0 / 15.0 + x2 * (-2.0 / 189.0 + x2 * (1.0 / 675.0)));
  }
  double inv;
  if (ax > 20.0) {
    const double q = std::exp(-2.0 * ax);
    inv = 4.0 * q / ((1.0 - q) * (1.0 - q));
  } else {
    const double sh = std::sinh(ax);
    inv = 1.0 / (sh * sh);
  }
  return inv - 1.0 / (x * x);
}

struct Composite {
  cplx value;
  long panels = 0;
};

template <class F>
Composite composite(const F& f, const std::vector<double>& edges, double h) {
  const Rule& r = rule();
  Composite out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / h)));
    const double step = (b - a) / n;
    for (long j = 0; j < n; ++j) {
      const double lo = a + j * step;
      const double c = lo + 0.5 * step;
      cplx acc = 0.0;
      for (int i = 0; i < kNodes; ++i) acc += r.w[i] * f(c + 0.5 * step * r.x[i]);
      out.value += 0.5 * step * acc;
    }
    out.panels += n;
  }
  return out;
}

}  // namespace

QuadratureResult pv_oracle(const IntegralSpec& spec_in, const QuadratureConfig& cfg) {
  IntegralSpec spec = spec_in;
  spec.correlator.epsilon = 0.0;
  spec.correlator = normalized(spec.correlator);
  const CorrelatorSpec& W = spec.correlator;
  const double sigma = spec.width;
  const double S = window(spec, cfg);
  const double a = spec.domain == Domain::FullLine ? -S : 0.0;
  const double gw = 4.0 * sigma * sigma;

  auto g = [&spec](double s) { return envelope_value(spec, s) * std::polar(1.0, -spec.omega * s); };

  QuadratureResult result;
  std::vector<double> edges = {a, S};
  std::function<cplx(double)> remainder;

  if (is_local(W.family)) {
    if (spec.domain != Domain::FullLine) {
      throw Error(ErrorCode::NonConverged, "oracle: double pole on the half-line boundary");
    }
    edges.push_back(0.0);
    const double A = -1.0 / (4.0 * kPi * kPi);
    const double rate = W.rate;
    const double Om = spec.omega;
    double C = 1.0, t = 0.0;
    if (spec.envelope == Envelope::GaussianCosh) {
      C = std::exp(-spec.tau0 * spec.tau0 / (sigma * sigma));
      t = spec.tau0 / (sigma * sigma);
    }
    const cplx I(0.0, 1.0);
    const cplx h0 = C;
    const cplx h1 = -I * Om * C;
    const cplx h2 = C * (t * t - Om * Om);
    const cplx h3 = C * (-3.0 * I * Om * t * t + I * Om * Om * Om);
    const cplx h4 = C * (t * t * t * t - 6.0 * Om * Om * t * t + Om * Om * Om * Om);
    const double freq = std::abs(Om) + t;

    remainder = [=](double s) {
      const double x = rate * s / 2.0;
      const cplx gs = g(s);
      const cplx smooth_w = -rate * rate / (16.0 * kPi * kPi) * inv_sinh2_minus_inv_x2(x);
      const double gauss = std::exp(-s * s / gw);
      cplx tail;
      if (std::abs(s) * freq < 2e-3) {
        tail = gauss * (h2 / 2.0 + s * (h3 / 6.0 + s * h4 / 24.0));
      } else {
        tail = (gs - gauss * (h0 + h1 * s)) / (s * s);
      }
      return gs * smooth_w + A * tail;
    };
    const cplx term = A * (-h0 * std::sqrt(kPi) / sigma + I * kPi * h1);
    result.pole_terms.push_back({0.0, A, term});
    result.poles.push_back(0.0);
  } else {
    std::vector<double> poles;
    std::vector<cplx> weights;
    for (double p : pole_locations(W)) {
      if (!(p > a && p < S)) continue;
      cplx res;
      if (W.family == Family::DeSitterOffset) {
        res = -W.rate * W.rate / (16.0 * kPi * kPi) / (W.rate / 2.0 * std::sinh(W.rate * p));
      } else {
        const double l = std::abs(W.separation);
        res = (p > 0.0 ? -1.0 : 1.0) / (8.0 * kPi * kPi * l);
      }
      const cplx w = res * g(p);
      const cplx term = w * cplx(gaussian_pv(a - p, S - p, gw), kPi);
      poles.push_back(p);
      weights.push_back(w);
      edges.push_back(p);
      result.pole_terms.push_back({p, res, term});
      result.poles.push_back(p);
    }
    remainder = [=](double s) {
      cplx v = g(s) * evaluate(W, s);
      for (std::size_t k = 0; k < poles.size(); ++k) {
        const double u = s - poles[k];
        v -= weights[k] * std::exp(-u * u / gw) / u;
      }
      return v;
    };
  }

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double h = sigma / 2.0;
  if (spec.omega != 0.0) h = std::min(h, 1.0 / std::abs(spec.omega));
  h = std::min(h, 2.0 / W.rate);

  Composite prev = composite(remainder, edges, h);
  long panels = prev.panels;
  double diff = 0.0;
  bool done = false;
  for (int k = 0; k < kMaxHalvings && !done; ++k) {
    h /= 2.0;
    const Composite next = composite(remainder, edges, h);
    panels += next.panels;
    diff = std::abs(next.value - prev.value);
    done = diff <= 1e-10 * std::abs(next.value) + 1e-15;
    prev = next;
  }
  if (!done) {
    throw Error(ErrorCode::NonConverged,
                "oracle remainder did not settle, last change " + std::to_string(diff));
  }

  cplx value = prev.value;
  for (const auto& p : result.pole_terms) value += p.contribution;
  result.value = value;
  result.abs_err = diff;
  result.panels = panels;
  result.epsilon = 0.0;
  return result;
}

}  // namespace harvest
