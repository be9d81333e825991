#include "prolatekit/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <utility>

#include "prolatekit/detail/tailfit.hpp"
#include "prolatekit/quadrature.hpp"
#include "prolatekit/specfun.hpp"

namespace prolatekit::transforms {

namespace {

using detail::cut_fractions;
using detail::fit_tail;
using detail::TailFit;
using detail::taper_table;
using detail::taper_weight;
using detail::TaperRow;

constexpr int kQuadPts = 12;
constexpr int kCuts = detail::kTaperCuts;

double median_spacing(const std::vector<double>& grid) {
  std::vector<double> d(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) d[i] = grid[i + 1] - grid[i];
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  return d[d.size() / 2];
}

// PV integral of g(t)/(x-t) over [lo,hi] with uniform cells anchored at x so
// that the singularity falls midway between nodes; symmetric pairs cancel
// the odd singular part.  Partial edge cells use 2-point Gauss.
template <typename G>
double pv_midpoint(G&& g, double lo, double hi, double x, double h) {
  constexpr double gp = 0.57735026918962576;  // 1/sqrt(3)
  double acc = 0.0;
  auto cell = [&](double start, double end) {
    const double cs = std::max(start, lo);
    const double ce = std::min(end, hi);
    if (ce <= cs) return;
    if (ce - cs > h * (1.0 - 1e-12)) {
      const double t = 0.5 * (cs + ce);
      acc += g(t) / (x - t) * h;
    } else {
      const double hw = 0.5 * (ce - cs);
      const double m = 0.5 * (cs + ce);
      const double t1 = m - hw * gp;
      const double t2 = m + hw * gp;
      acc += hw * (g(t1) / (x - t1) + g(t2) / (x - t2));
    }
  };
  for (long k = 0;; ++k) {
    const double start = x + k * h;
    if (start >= hi) break;
    cell(start, start + h);
  }
  for (long k = 0;; ++k) {
    const double end = x - k * h;
    if (end <= lo) break;
    cell(end - h, end);
  }
  return acc;
}

template <typename G>
double pv_richardson(G&& g, double lo, double hi, double x, double h) {
  const double d1 = pv_midpoint(g, lo, hi, x, h);
  const double d2 = pv_midpoint(g, lo, hi, x, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// Composite Simpson for the smooth ring pieces next to a PV patch.
template <typename G>
double simpson(G&& g, double lo, double hi, double h) {
  if (hi <= lo) return 0.0;
  const int n =
      std::max(2, 2 * static_cast<int>(std::ceil((hi - lo) / (2.0 * h))));
  const double step = (hi - lo) / n;
  double acc = g(lo) + g(hi);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(lo + i * step);
  return acc * step / 3.0;
}

double sinc_kernel(double c, double u) {
  const double z = c * u;
  if (std::abs(z) < 1e-3)
    return c / M_PI * (1.0 - z * z / 6.0 * (1.0 - z * z / 20.0));
  return std::sin(z) / (M_PI * u);
}

void check_resolution(const SampledFunction& f, double c, const char* op) {
  if (median_spacing(f.grid) > 2.0 * M_PI / (8.0 * c))
    throw std::runtime_error(std::string(op) +
                             ": grid resolves frequency c with fewer than 8 "
                             "nodes per period");
}

}  // namespace

double hilbert_transform(const SampledFunction& f, double x) {
  f.validate();
  if (!(x > f.a() && x < f.b()))
    throw std::domain_error("hilbert_transform: x must be strictly inside "
                            "the grid");
  const CubicSpline s(f);
  const double h = median_spacing(f.grid);
  return pv_richardson([&](double t) { return s(t); }, f.a(), f.b(), x, h) /
         M_PI;
}

SampledFunction project_fourier(const SampledFunction& f, Bandwidth c,
                                FourierRoute route,
                                const std::vector<double>& out_grid) {
  f.validate();
  check_resolution(f, c.c, "project_fourier");
  const double a = f.a();
  const double b = f.b();
  const double m = 0.5 * (a + b);
  const CubicSpline s(f);
  const auto cuts = cut_fractions();
  const double half = 0.5 * (b - a);
  std::array<double, kCuts> Bi{};
  for (int i = 0; i < kCuts; ++i) Bi[i] = cuts[i] * half;

  const quad::QuadratureRule rule =
      quad::oscillatory_rule(a, b, c.c, 8, kQuadPts);
  const std::size_t nq = rule.nodes.size();
  std::vector<double> frac(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    const double t = rule.nodes[j];
    frac[j] = t > m ? (t - m) / (b - m) : (m - t) / (m - a);
  }
  const std::vector<TaperRow> chi = taper_table(frac, cuts);

  SampledFunction out;
  out.grid = out_grid;
  out.domain = f.domain;
  out.values.resize(out_grid.size());

  if (route == FourierRoute::Sinc) {
    std::vector<double> fv(nq);
    for (std::size_t j = 0; j < nq; ++j) fv[j] = s(rule.nodes[j]);
    for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
      const double x = out_grid[ix];
      std::array<double, kCuts> vals{};
      for (std::size_t j = 0; j < nq; ++j) {
        const double g =
            rule.weights[j] * fv[j] * sinc_kernel(c.c, x - rule.nodes[j]);
        for (int i = 0; i < kCuts; ++i) vals[i] += chi[j][i] * g;
      }
      out.values[ix] = fit_tail(Bi.data(), vals.data(), kCuts).value;
    }
    return out;
  }

  // Hilbert route: each Hilbert transform is split into a PV patch of whole
  // quadrature panels around x (uniform midpoint cells + Richardson) and the
  // remaining panels summed from precomputed integrand samples.
  std::vector<double> g1(nq), g2(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    const double t = rule.nodes[j];
    const double ft = s(t);
    g1[j] = ft * std::cos(c.c * t);
    g2[j] = ft * std::sin(c.c * t);
  }
  const int panels = static_cast<int>(nq) / kQuadPts;
  const double pw = (b - a) / panels;
  const double delta = std::max(3.0 * 2.0 * M_PI / c.c, 4.0 * pw);
  const double hpv = 2.0 * M_PI / (48.0 * c.c);

  for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
    const double x = out_grid[ix];
    int i0 = static_cast<int>(std::floor((x - delta - a) / pw));
    int i1 = static_cast<int>(std::floor((x + delta - a) / pw));
    i0 = std::clamp(i0, 0, panels - 1);
    i1 = std::clamp(i1, 0, panels - 1);
    const double P0 = a + i0 * pw;
    const double P1 = a + (i1 + 1) * pw;

    std::array<double, kCuts> acc1{}, acc2{};
    for (std::size_t j = 0; j < nq; ++j) {
      const double t = rule.nodes[j];
      if (t >= P0 && t <= P1) continue;
      const double k = rule.weights[j] / (x - t);
      for (int i = 0; i < kCuts; ++i) {
        acc1[i] += chi[j][i] * k * g1[j];
        acc2[i] += chi[j][i] * k * g2[j];
      }
    }
    const double patch1 = pv_richardson(
        [&](double t) { return s(t) * std::cos(c.c * t); }, P0, P1, x, hpv);
    const double patch2 = pv_richardson(
        [&](double t) { return s(t) * std::sin(c.c * t); }, P0, P1, x, hpv);
    const double fr0 = P0 > m ? (P0 - m) / (b - m) : (m - P0) / (m - a);
    const double fr1 = P1 > m ? (P1 - m) / (b - m) : (m - P1) / (m - a);
    const double pfrac = std::max(fr0, fr1);
    std::array<double, kCuts> vals{};
    for (int i = 0; i < kCuts; ++i) {
      const double pc = taper_weight(pfrac, cuts[i]);
      vals[i] = (std::sin(c.c * x) * (acc1[i] + pc * patch1) -
                 std::cos(c.c * x) * (acc2[i] + pc * patch2)) /
                M_PI;
    }
    out.values[ix] = fit_tail(Bi.data(), vals.data(), kCuts).value;
  }
  return out;
}

SampledFunction project_fourier(const SampledFunction& f, Bandwidth c,
                                FourierRoute route) {
  return project_fourier(f, c, route, f.grid);
}

namespace {

// Transform core without the tail rejection; the Spectral projector route
// evaluates the forward transform at band nodes approaching the band edge,
// where the pointwise tail estimate is genuinely large but the subsequent
// band integral averages the localized edge error away.
HankelTransformResult hankel_impl(const SampledFunction& f, Order alpha,
                                  const std::vector<double>& out_grid) {
  f.validate();
  const double a = std::max(f.a(), 0.0);
  const double b = f.b();
  const CubicSpline s(f);
  double xmax = 1e-3;
  for (double x : out_grid) xmax = std::max(xmax, x);
  const quad::QuadratureRule rule =
      quad::oscillatory_rule(a, b, xmax, 8, kQuadPts);
  const std::size_t nq = rule.nodes.size();
  std::vector<double> fv(nq), frac(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    fv[j] = s(rule.nodes[j]);
    frac[j] = rule.nodes[j] / b;
  }
  const auto cuts = cut_fractions();
  std::array<double, kCuts> Bi{};
  for (int i = 0; i < kCuts; ++i) Bi[i] = cuts[i] * b;
  const std::vector<TaperRow> chi = taper_table(frac, cuts);

  HankelTransformResult res;
  res.g.grid = out_grid;
  res.g.domain = DomainTag::HalfLineTruncated;
  res.g.values.resize(out_grid.size());
  for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
    const double x = out_grid[ix];
    std::array<double, kCuts> vals{};
    for (std::size_t j = 0; j < nq; ++j) {
      const double y = rule.nodes[j];
      const double z = x * y;
      const double g = (z > 0.0) ? rule.weights[j] * fv[j] * std::sqrt(z) *
                                       specfun::bessel_j(alpha.alpha, z)
                                 : 0.0;
      for (int i = 0; i < kCuts; ++i) vals[i] += chi[j][i] * g;
    }
    const TailFit fit = fit_tail(Bi.data(), vals.data(), kCuts);
    res.g.values[ix] = fit.value;
    res.tail_estimate = std::max(res.tail_estimate, fit.err);
  }
  return res;
}

}  // namespace

HankelTransformResult hankel_transform(const SampledFunction& f, Order alpha,
                                       const std::vector<double>& out_grid) {
  HankelTransformResult res = hankel_impl(f, alpha, out_grid);
  double sup = 0.0;
  for (double v : res.g.values) sup = std::max(sup, std::abs(v));
  if (res.tail_estimate > 1e-6 * std::max(sup, 1e-300))
    throw std::runtime_error(
        "hankel_transform: domain truncation tail exceeds 1e-6 of the "
        "result");
  return res;
}

HankelTransformResult hankel_transform(const SampledFunction& f,
                                       Order alpha) {
  return hankel_transform(f, alpha, f.grid);
}

double lommel_kernel(Order alpha, Bandwidth c, double x, double y) {
  if (x <= 0.0 || y <= 0.0) return 0.0;
  const double al = alpha.alpha;
  if (std::abs(x - y) < 1e-6 * (1.0 + x)) {
    // L'Hopital limit across the diagonal with analytic Bessel derivatives.
    const double z = 0.5 * (x + y);
    const double w = c.c * z;
    const double jm = specfun::bessel_j(al - 1.0, w);
    const double ja = specfun::bessel_j(al, w);
    const double jp = specfun::bessel_j(al + 1.0, w);
    const double dja = 0.5 * (jm - jp);            // J'_a
    const double djm = -ja + (al - 1.0) / w * jm;  // J'_{a-1} by recurrence
    const double nprime = jm * ja + w * (djm * ja - jm * dja);
    return -std::sqrt(x * y) * c.c * nprime / (2.0 * z);
  }
  const double jax = specfun::bessel_j(al, c.c * x);
  const double jay = specfun::bessel_j(al, c.c * y);
  const double jmx = specfun::bessel_j(al - 1.0, c.c * x);
  const double jmy = specfun::bessel_j(al - 1.0, c.c * y);
  return std::sqrt(x * y) * c.c * (y * jmy * jax - x * jmx * jay) /
         (x * x - y * y);
}

SampledFunction project_hankel(const SampledFunction& f, Order alpha,
                               Bandwidth c, HankelRoute route,
                               const std::vector<double>& out_grid) {
  f.validate();
  check_resolution(f, c.c, "project_hankel");
  const double a = std::max(f.a(), 0.0);
  const double b = f.b();
  const double al = alpha.alpha;
  const CubicSpline s(f);
  const auto cuts = cut_fractions();
  std::array<double, kCuts> Bi{};
  for (int i = 0; i < kCuts; ++i) Bi[i] = cuts[i] * b;

  SampledFunction out;
  out.grid = out_grid;
  out.domain = DomainTag::HalfLineTruncated;
  out.values.resize(out_grid.size());

  if (route == HankelRoute::Spectral) {
    // H^alpha(chi_[0,c] H^alpha f): forward transform on a band rule, then
    // the band integral back.
    const quad::QuadratureRule band =
        quad::oscillatory_rule(0.0, c.c, b, 8, kQuadPts);
    const auto fwd = hankel_impl(f, alpha, band.nodes);
    for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
      const double x = out_grid[ix];
      double acc = 0.0;
      for (std::size_t j = 0; j < band.nodes.size(); ++j) {
        const double z = band.nodes[j] * x;
        const double kern =
            (z > 0.0) ? std::sqrt(z) * specfun::bessel_j(al, z) : 0.0;
        acc += band.weights[j] * fwd.g.values[j] * kern;
      }
      out.values[ix] = acc;
    }
    return out;
  }

  const double ylo = std::max(a, 1e-9);
  const quad::QuadratureRule rule =
      quad::oscillatory_rule(ylo, b, c.c, 8, kQuadPts);
  const std::size_t nq = rule.nodes.size();
  std::vector<double> frac(nq);
  for (std::size_t j = 0; j < nq; ++j) frac[j] = rule.nodes[j] / b;
  const std::vector<TaperRow> chi = taper_table(frac, cuts);

  if (route == HankelRoute::Lommel) {
    std::vector<double> fv(nq), jay(nq), jmy(nq);
    for (std::size_t j = 0; j < nq; ++j) {
      fv[j] = s(rule.nodes[j]);
      jay[j] = specfun::bessel_j(al, c.c * rule.nodes[j]);
      jmy[j] = specfun::bessel_j(al - 1.0, c.c * rule.nodes[j]);
    }
    for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
      const double x = out_grid[ix];
      const double jax = x > 0.0 ? specfun::bessel_j(al, c.c * x) : 0.0;
      const double jmx = x > 0.0 ? specfun::bessel_j(al - 1.0, c.c * x) : 0.0;
      std::array<double, kCuts> vals{};
      for (std::size_t j = 0; j < nq; ++j) {
        const double y = rule.nodes[j];
        double kern;
        if (x <= 0.0) {
          kern = 0.0;
        } else if (std::abs(x - y) < 1e-6 * (1.0 + x)) {
          kern = lommel_kernel(alpha, c, x, y);
        } else {
          kern = std::sqrt(x * y) * c.c *
                 (y * jmy[j] * jax - x * jmx * jay[j]) / (x * x - y * y);
        }
        const double g = rule.weights[j] * fv[j] * kern;
        for (int i = 0; i < kCuts; ++i) vals[i] += chi[j][i] * g;
      }
      out.values[ix] = fit_tail(Bi.data(), vals.data(), kCuts).value;
    }
    return out;
  }

  // WeightedHilbert route.  On the u = y^2 half line,
  //   P_c^alpha f(x) = W1 f(x^2) - W2 f(x^2).
  // Each PV integral is pulled back to the y variable through
  // 1/(u - y^2) = 1/((x - y)(x + y)) and evaluated as: whole quadrature
  // panels away from x (precomputed samples), smooth ring pieces of the
  // dropped panels (Simpson in y), and a PV core around y = x with uniform
  // cells in y (midpoint + Richardson).  Working in y keeps the number of
  // cells per oscillation period constant along the whole core; uniform
  // cells in v = y^2 would under-resolve the oscillation where sqrt(v) is
  // small.
  std::vector<double> G1(nq), G2(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    const double y = rule.nodes[j];
    const double fy = s(y);
    G1[j] = fy * std::sqrt(y) * specfun::bessel_j(al - 1.0, c.c * y) * 2.0 * y;
    G2[j] = fy / std::sqrt(y) * specfun::bessel_j(al, c.c * y) * 2.0 * y;
  }
  const int panels = static_cast<int>(nq) / kQuadPts;
  const double pw = (b - ylo) / panels;
  auto gy1 = [&](double y) {
    return s(y) * std::sqrt(y) * specfun::bessel_j(al - 1.0, c.c * y);
  };
  auto gy2 = [&](double y) {
    return s(y) / std::sqrt(y) * specfun::bessel_j(al, c.c * y);
  };

  for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
    const double x = out_grid[ix];
    const double u = x * x;
    const double delta = std::max(3.0 * 2.0 * M_PI / c.c, 4.0 * pw);
    int i0 = static_cast<int>(std::floor((x - delta - ylo) / pw));
    int i1 = static_cast<int>(std::floor((x + delta - ylo) / pw));
    i0 = std::clamp(i0, 0, panels - 1);
    i1 = std::clamp(i1, 0, panels - 1);
    const double P0 = ylo + i0 * pw;  // dropped-panel extent in y
    const double P1 = ylo + (i1 + 1) * pw;

    std::array<double, kCuts> acc1{}, acc2{};
    for (std::size_t j = 0; j < nq; ++j) {
      const double y = rule.nodes[j];
      if (y >= P0 && y <= P1) continue;
      const double k = rule.weights[j] / (u - y * y);
      for (int i = 0; i < kCuts; ++i) {
        acc1[i] += chi[j][i] * k * G1[j];
        acc2[i] += chi[j][i] * k * G2[j];
      }
    }
    // PV core [x - dy, x + dy] in y; the smooth factor 2t/(x + t) carries
    // the Jacobian of v = t^2 and the regular half of the split denominator.
    const double hpv = 2.0 * M_PI / (48.0 * c.c);
    const double dy = 8.0 * 2.0 * M_PI / c.c;
    const double core_lo = std::max(P0, x - dy);
    const double core_hi = std::min(P1, x + dy);
    double patch1 = pv_richardson(
        [&](double t) { return gy1(t) * 2.0 * t / (x + t); }, core_lo,
        core_hi, x, hpv);
    double patch2 = pv_richardson(
        [&](double t) { return gy2(t) * 2.0 * t / (x + t); }, core_lo,
        core_hi, x, hpv);
    // smooth ring pieces of the dropped panels, integrated in y
    const double hy = 2.0 * M_PI / (32.0 * c.c);
    auto ring = [&](double ya, double yb, const auto& G) {
      return simpson(
          [&](double y) { return G(y) * 2.0 * y / (u - y * y); }, ya, yb, hy);
    };
    if (core_lo > P0) {
      patch1 += ring(P0, core_lo, gy1);
      patch2 += ring(P0, core_lo, gy2);
    }
    if (core_hi < P1) {
      patch1 += ring(core_hi, P1, gy1);
      patch2 += ring(core_hi, P1, gy2);
    }
    const double pfrac = P1 / b;

    const double w1f = 0.5 * M_PI * c.c * std::pow(u, 0.25) *
                       specfun::bessel_j(al, c.c * x);
    const double w2f = 0.5 * M_PI * c.c * std::pow(u, 0.75) *
                       specfun::bessel_j(al - 1.0, c.c * x);
    std::array<double, kCuts> vals{};
    for (int i = 0; i < kCuts; ++i) {
      const double pc = taper_weight(pfrac, cuts[i]);
      vals[i] =
          (w1f * (acc1[i] + pc * patch1) - w2f * (acc2[i] + pc * patch2)) /
          M_PI;
    }
    out.values[ix] = fit_tail(Bi.data(), vals.data(), kCuts).value;
  }
  return out;
}

SampledFunction project_hankel(const SampledFunction& f, Order alpha,
                               Bandwidth c, HankelRoute route) {
  return project_hankel(f, alpha, c, route, f.grid);
}

WeightSpec WeightSpec::power_weight(double beta) {
  WeightSpec w;
  w.power = true;
  w.beta = beta;
  return w;
}

WeightSpec WeightSpec::tabulated(SampledFunction table) {
  table.validate();
  for (double v : table.values)
    if (!(v > 0.0))
      throw std::invalid_argument("WeightSpec: tabulated weight must be > 0");
  WeightSpec w;
  w.power = false;
  w.table = std::move(table);
  return w;
}

namespace {

struct Avg {
  double value = 0.0;
  bool divergent = false;
};

// (1/(v-u)) int_u^v x^e dx with exact antiderivatives; non-integrable at a
// zero left endpoint when e <= -1.
Avg power_avg(double e, double u, double v) {
  Avg out;
  if (u <= 0.0 && e <= -1.0) {
    out.divergent = true;
    return out;
  }
  if (std::abs(e + 1.0) < 1e-12) {
    out.value = (std::log(v) - std::log(u)) / (v - u);
    return out;
  }
  const double upow = u > 0.0 ? std::pow(u, e + 1.0) : 0.0;
  out.value = (std::pow(v, e + 1.0) - upow) / ((e + 1.0) * (v - u));
  return out;
}

Avg bracket_on(const WeightSpec& w, const CubicSpline* table_spline, double p,
               double u, double v) {
  const double q = p / (p - 1.0);
  Avg out;
  if (w.power) {
    const Avg a1 = power_avg(w.beta, u, v);
    const Avg a2 = power_avg(-w.beta * q / p, u, v);
    if (a1.divergent || a2.divergent) {
      out.divergent = true;
      return out;
    }
    out.value = a1.value * std::pow(a2.value, p - 1.0);
    return out;
  }
  // composite Simpson on 64 cells
  const int n = 64;
  const double h = (v - u) / n;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = u + i * h;
    const double wv = std::max((*table_spline)(x), 1e-300);
    const double coef = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s1 += coef * wv;
    s2 += coef * std::pow(wv, -q / p);
  }
  s1 *= h / 3.0 / (v - u);
  s2 *= h / 3.0 / (v - u);
  out.value = s1 * std::pow(s2, p - 1.0);
  return out;
}

}  // namespace

ApWeightReport muckenhoupt_estimate(const WeightSpec& omega, double p,
                                    double a, double b, int depth) {
  if (!(p > 1.0))
    throw std::domain_error("muckenhoupt_estimate: p must be > 1");
  if (!(b > a))
    throw std::domain_error("muckenhoupt_estimate: empty interval");
  if (depth < 0 || depth > 24)
    throw std::domain_error("muckenhoupt_estimate: depth out of range");
  std::unique_ptr<CubicSpline> table;
  if (!omega.power) table = std::make_unique<CubicSpline>(omega.table);
  ApWeightReport rep;
  rep.p = p;
  rep.depth = depth;
  rep.level_sup.resize(depth + 1, 0.0);
  double running = 0.0;
  for (int lvl = 0; lvl <= depth; ++lvl) {
    const long nint = 1L << lvl;
    const double w = (b - a) / static_cast<double>(nint);
    auto visit = [&](double u, double v) {
      const Avg br = bracket_on(omega, table.get(), p, u, v);
      if (br.divergent) {
        if (!rep.diverging) {
          rep.diverging = true;
          rep.diverging_level = lvl;
        }
        return;
      }
      running = std::max(running, br.value);
    };
    for (long j = 0; j < nint; ++j) visit(a + j * w, a + (j + 1) * w);
    for (long j = 0; j + 1 < nint; ++j)
      visit(a + (j + 0.5) * w, a + (j + 1.5) * w);
    rep.level_sup[lvl] = running;
  }
  return rep;
}

double lp_norm(const SampledFunction& f, double p) {
  f.validate();
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  const CubicSpline s(f);
  const int panels = std::clamp(static_cast<int>(f.grid.size()) / 3, 32, 2000);
  const quad::QuadratureRule rule =
      quad::composite_gauss(f.a(), f.b(), panels, 6);
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    acc += rule.weights[j] * std::pow(std::abs(s(rule.nodes[j])), p);
  return std::pow(acc, 1.0 / p);
}

NormRateReport operator_norm_scan(Projector op, Order alpha, Bandwidth c,
                                  double p, double q,
                                  const std::vector<SampledFunction>& family,
                                  const std::vector<std::string>& labels) {
  if (!(1.0 < p && p <= q))
    throw std::domain_error("operator_norm_scan: requires 1 < p <= q");
  if (labels.size() != family.size())
    throw std::invalid_argument("operator_norm_scan: label/family mismatch");
  NormRateReport rep;
  rep.p = p;
  rep.q = q;
  rep.labels = labels;
  double run = 0.0;
  for (const SampledFunction& f : family) {
    const SampledFunction g =
        op == Projector::Fourier
            ? project_fourier(f, c, FourierRoute::Sinc)
            : project_hankel(f, alpha, c, HankelRoute::Lommel);
    const double ratio = lp_norm(g, q) / lp_norm(f, p);
    rep.ratios.push_back(ratio);
    run = std::max(run, ratio);
    rep.running_max.push_back(run);
  }
  return rep;
}

namespace {
void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}
}  // namespace

std::string to_csv(const ApWeightReport& report) {
  std::string out = "depth,level_sup,diverging\n";
  for (std::size_t d = 0; d < report.level_sup.size(); ++d) {
    out += std::to_string(d);
    out += ',';
    append_num(out, report.level_sup[d]);
    out += ',';
    const bool div =
        report.diverging && static_cast<int>(d) >= report.diverging_level;
    out += div ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string to_csv(const NormRateReport& report) {
  std::string out = "member,p,q,ratio,running_max\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    out += report.labels[i];
    out += ',';
    append_num(out, report.p);
    out += ',';
    append_num(out, report.q);
    out += ',';
    append_num(out, report.ratios[i]);
    out += ',';
    append_num(out, report.running_max[i]);
    out += '\n';
  }
  return out;
}

}  // namespace prolatekit::transforms
