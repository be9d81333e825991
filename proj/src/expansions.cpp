#include "prolatekit/expansions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "prolatekit/bases.hpp"
#include "prolatekit/detail/tailfit.hpp"
#include "prolatekit/quadrature.hpp"
#include "prolatekit/transforms.hpp"

namespace prolatekit::expansions {

namespace {

using detail::cut_fractions;
using detail::fit_tail;
using detail::kTaperCuts;
using detail::taper_weight;
using detail::TaperRow;

// Per-n integrals a_n = int f(t) psi_n(t) dt over the truncated domain,
// with tapered-cut tail closure shared with the projector quadratures.  The
// closure must act on the psi_n integrand (not on the per-k Bessel
// integrals): an individual j_k of large order k carries asymptotic
// amplitude corrections in powers of k^2/(c B) that the polynomial tail
// model cannot extrapolate, while the coefficient combination psi_n is
// tame (corrections scale like n/(c B)).
struct CoeffQuad {
  std::vector<double> a;
  std::vector<double> tail;
};

template <typename EvalAll>
CoeffQuad coefficient_integrals(const SampledFunction& f, int K,
                                const Eigen::MatrixXd& B, int N_max,
                                double angfreq, bool halfline,
                                EvalAll&& eval_all) {
  const CubicSpline s(f);
  double a = f.a();
  const double b = f.b();
  if (halfline) a = std::max(a, 1e-9);
  const double m = 0.5 * (a + b);
  const auto cuts = cut_fractions();
  std::array<double, kTaperCuts> Bi{};
  const double half = halfline ? b : 0.5 * (b - a);
  for (int i = 0; i < kTaperCuts; ++i) Bi[i] = cuts[i] * half;

  const quad::QuadratureRule rule = quad::oscillatory_rule(a, b, angfreq, 8, 12);
  std::vector<std::array<double, kTaperCuts>> vals(N_max + 1);
  for (auto& v : vals) v.fill(0.0);
  const auto Bn = B.leftCols(N_max + 1);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double t = rule.nodes[j];
    const double wf = rule.weights[j] * s(t);
    const double frac =
        halfline ? t / b : (t > m ? (t - m) / (b - m) : (m - t) / (m - a));
    TaperRow chi;
    for (int i = 0; i < kTaperCuts; ++i) chi[i] = taper_weight(frac, cuts[i]);
    const std::vector<double> jb = eval_all(t);
    Eigen::Map<const Eigen::VectorXd> v(jb.data(), K);
    const Eigen::VectorXd psi = Bn.transpose() * v;
    for (int n = 0; n <= N_max; ++n) {
      const double g = wf * psi(n);
      for (int i = 0; i < kTaperCuts; ++i) vals[n][i] += chi[i] * g;
    }
  }
  CoeffQuad out;
  out.a.resize(N_max + 1);
  out.tail.resize(N_max + 1);
  for (int n = 0; n <= N_max; ++n) {
    const auto fit = fit_tail(Bi.data(), vals[n].data(), kTaperCuts);
    out.a[n] = fit.value;
    out.tail[n] = fit.err;
  }
  return out;
}

// psi_n(x) for n = 0..N_max over a point set, as an (N_max+1) x npts matrix.
template <typename EvalAll>
Eigen::MatrixXd basis_matrix(const Eigen::MatrixXd& B, int N_max,
                             const std::vector<double>& xs,
                             EvalAll&& eval_all) {
  const int K = static_cast<int>(B.rows());
  Eigen::MatrixXd out(N_max + 1, static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<double> jb = eval_all(xs[i]);
    Eigen::Map<const Eigen::VectorXd> v(jb.data(), K);
    out.col(static_cast<int>(i)) = B.leftCols(N_max + 1).transpose() * v;
  }
  return out;
}

template <typename EvalAll>
ExpansionReport expand_core(const SampledFunction& f, int K,
                            const Eigen::MatrixXd& B, int N_max,
                            double angfreq, bool halfline,
                            EvalAll&& eval_all) {
  f.validate();
  if (N_max < 0 || N_max > K - 10)
    throw std::domain_error("expand: requires 0 <= N_max <= K - 10");
  CoeffQuad q =
      coefficient_integrals(f, K, B, N_max, angfreq, halfline, eval_all);
  ExpansionReport rep;
  rep.coefficients = std::move(q.a);
  rep.coefficient_tails = std::move(q.tail);
  return rep;
}

template <typename EvalAll, typename RefFn>
ExpansionReport converge_core(const SampledFunction& f, int K,
                              const Eigen::MatrixXd& B, double p,
                              const std::vector<double>& probes,
                              const std::vector<double>& norm_grid,
                              double angfreq, bool halfline,
                              EvalAll&& eval_all, RefFn&& ref_fn) {
  if (!(p >= 1.0))
    throw std::domain_error("converge_report: requires p >= 1");
  if (probes.empty())
    throw std::domain_error("converge_report: needs at least one probe");
  const int N_max = K - 10;
  ExpansionReport rep =
      expand_core(f, K, B, N_max, angfreq, halfline, eval_all);
  rep.p = p;
  rep.probes = probes;

  // one reference evaluation over probes + norm grid
  std::vector<double> points = probes;
  points.insert(points.end(), norm_grid.begin(), norm_grid.end());
  const std::vector<double> ref = ref_fn(points);
  const std::size_t np = probes.size();
  rep.reference.assign(ref.begin(), ref.begin() + np);

  if (p == 1.0) {
    // p = 1 is only admissible for band-limited f: the projection must fix
    // it at the probes
    const CubicSpline sf(f);
    double sup = 1.0;
    for (double v : f.values) sup = std::max(sup, std::abs(v));
    for (std::size_t i = 0; i < np; ++i)
      if (std::abs(rep.reference[i] - sf(probes[i])) > 1e-6 * sup)
        throw std::domain_error(
            "converge_report: p = 1 requires band-limited f (projection "
            "residual above 1e-6)");
  }

  const Eigen::MatrixXd psi = basis_matrix(B, N_max, points, eval_all);

  rep.abs_errors.assign(N_max + 1, std::vector<double>(np, 0.0));
  rep.tail_bounds.assign(N_max + 1, std::vector<double>(np, 0.0));
  rep.lp_errors.assign(N_max + 1, 0.0);

  // ascending-N partial sums over all points
  std::vector<double> S(points.size(), 0.0);
  SampledFunction diff;
  diff.grid = norm_grid;
  diff.domain = halfline ? DomainTag::HalfLineTruncated
                         : DomainTag::RealLineTruncated;
  diff.values.resize(norm_grid.size());
  for (int N = 0; N <= N_max; ++N) {
    const double a = rep.coefficients[N];
    for (std::size_t i = 0; i < points.size(); ++i)
      S[i] += a * psi(N, static_cast<int>(i));
    for (std::size_t i = 0; i < np; ++i)
      rep.abs_errors[N][i] = std::abs(S[i] - ref[i]);
    for (std::size_t i = 0; i < norm_grid.size(); ++i)
      diff.values[i] = S[np + i] - ref[np + i];
    rep.lp_errors[N] = transforms::lp_norm(diff, p);
  }
  // absolute tails sum_{n>N} |a_n||psi_n(x_i)| accumulated downward
  for (int N = N_max - 1; N >= 0; --N)
    for (std::size_t i = 0; i < np; ++i)
      rep.tail_bounds[N][i] =
          rep.tail_bounds[N + 1][i] +
          std::abs(rep.coefficients[N + 1]) *
              std::abs(psi(N + 1, static_cast<int>(i)));

  for (std::size_t i = 0; i < np; ++i)
    if (rep.abs_errors[N_max][i] > 1e-3)
      rep.flagged_probes.push_back(static_cast<int>(i));

  // monotone envelope of the worst-probe error, fitted log-log against N+1
  std::vector<double> env(N_max + 1, 0.0);
  double run = 0.0;
  for (int N = N_max; N >= 0; --N) {
    for (std::size_t i = 0; i < np; ++i)
      run = std::max(run, rep.abs_errors[N][i]);
    env[N] = run;
  }
  std::vector<double> xs, ys;
  for (int N = 0; N <= N_max; ++N)
    if (env[N] > 0.0) {
      xs.push_back(N + 1.0);
      ys.push_back(env[N]);
    }
  rep.envelope_rate = xs.size() >= 2 ? bases::fit_loglog_slope(xs, ys) : 0.0;
  return rep;
}

std::vector<double> fourier_eval_point(const prolate::ProlateBasis& b,
                                       double x) {
  return bases::spherical_j_all(b.K, b.c, x);
}

std::vector<double> hankel_eval_point(const prolate::CircularProlateBasis& b,
                                      double x) {
  return bases::spherical_j_hankel_all(b.K, b.alpha, b.c, x);
}

}  // namespace

std::vector<double> default_probes(int count, double lo, double hi) {
  if (!(hi > lo) || count < 1)
    throw std::domain_error("default_probes: bad range");
  std::vector<double> out(count);
  const double w = hi - lo;
  for (int i = 0; i < count; ++i)
    out[i] = lo + std::fmod((i + 1) * std::sqrt(2.0) / 10.0, w);
  std::sort(out.begin(), out.end());
  return out;
}

ExpansionReport expand(const SampledFunction& f,
                       const prolate::ProlateBasis& basis, int N_max) {
  return expand_core(f, basis.K, basis.B, N_max, 2.0 * basis.c.c, false,
                     [&](double x) { return fourier_eval_point(basis, x); });
}

ExpansionReport expand(const SampledFunction& f,
                       const prolate::CircularProlateBasis& basis,
                       int N_max) {
  return expand_core(f, basis.K, basis.B, N_max, 2.0 * basis.c.c, true,
                     [&](double x) { return hankel_eval_point(basis, x); });
}

ExpansionReport converge_report(const SampledFunction& f,
                                const prolate::ProlateBasis& basis, double p,
                                const std::vector<double>& probes) {
  const std::vector<double> norm_grid = uniform_grid(-8.0, 8.0, 401);
  return converge_core(
      f, basis.K, basis.B, p, probes, norm_grid, 2.0 * basis.c.c, false,
      [&](double x) { return fourier_eval_point(basis, x); },
      [&](const std::vector<double>& pts) {
        return band_limit_reference(f, basis.c, pts).values;
      });
}

ExpansionReport converge_report(const SampledFunction& f,
                                const prolate::CircularProlateBasis& basis,
                                double p, const std::vector<double>& probes) {
  const std::vector<double> norm_grid = uniform_grid(0.02, 8.0, 400);
  return converge_core(
      f, basis.K, basis.B, p, probes, norm_grid, 2.0 * basis.c.c, true,
      [&](double x) { return hankel_eval_point(basis, x); },
      [&](const std::vector<double>& pts) {
        return transforms::project_hankel(f, basis.alpha, basis.c,
                                          transforms::HankelRoute::Spectral,
                                          pts)
            .values;
      });
}

ExpansionReport lp_divergence_probe(const SampledFunction& f,
                                    const prolate::ProlateBasis& basis,
                                    double p) {
  return converge_report(f, basis, p, default_probes(10, -2.0, 2.0));
}

ExpansionReport lp_divergence_probe(const SampledFunction& f,
                                    const prolate::CircularProlateBasis& basis,
                                    double p) {
  return converge_report(f, basis, p, default_probes(10, 0.05, 2.0));
}

SampledFunction band_limit_reference(const SampledFunction& f, Bandwidth c,
                                     const std::vector<double>& out_grid) {
  f.validate();
  const CubicSpline s(f);
  const double a = f.a();
  const double b = f.b();
  const double m = 0.5 * (a + b);
  const auto cuts = cut_fractions();
  std::array<double, kTaperCuts> Bi{};
  const double half = 0.5 * (b - a);
  for (int i = 0; i < kTaperCuts; ++i) Bi[i] = cuts[i] * half;

  const quad::QuadratureRule rule_t =
      quad::oscillatory_rule(a, b, 2.0 * c.c, 8, 12);
  const std::size_t nt = rule_t.nodes.size();
  std::vector<double> fv(nt), frac(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = rule_t.nodes[j];
    fv[j] = rule_t.weights[j] * s(t);
    frac[j] = t > m ? (t - m) / (b - m) : (m - t) / (m - a);
  }
  const std::vector<TaperRow> chi = detail::taper_table(frac, cuts);

  // fhat(xi) = A(xi) - i B(xi) on a band rule resolving e^{i xi x} for the
  // requested x and the intrinsic oscillation of fhat (scale of the domain).
  // The truncation closure cannot act per xi: near xi = 0 the tail of
  // f(t) cos(xi t) oscillates too slowly for either the taper or the
  // polynomial model.  Instead keep the tapered partial integrals A_i, B_i
  // for every window cut through the xi integration and extrapolate once
  // per output point, where the effective kernel oscillates at frequency c.
  double xifreq = std::max(std::abs(a), std::abs(b));
  for (double x : out_grid) xifreq = std::max(xifreq, std::abs(x));
  const quad::QuadratureRule rule_xi =
      quad::oscillatory_rule(-c.c, c.c, xifreq, 8, 12);
  const std::size_t nxi = rule_xi.nodes.size();
  std::vector<std::array<double, kTaperCuts>> Av(nxi), Bv(nxi);
  for (std::size_t jx = 0; jx < nxi; ++jx) {
    const double xi = rule_xi.nodes[jx];
    Av[jx].fill(0.0);
    Bv[jx].fill(0.0);
    for (std::size_t j = 0; j < nt; ++j) {
      const double ph = xi * rule_t.nodes[j];
      const double gc = fv[j] * std::cos(ph);
      const double gs = fv[j] * std::sin(ph);
      for (int i = 0; i < kTaperCuts; ++i) {
        Av[jx][i] += chi[j][i] * gc;
        Bv[jx][i] += chi[j][i] * gs;
      }
    }
  }

  SampledFunction out;
  out.grid = out_grid;
  out.domain = f.domain;
  out.values.resize(out_grid.size());
  for (std::size_t ix = 0; ix < out_grid.size(); ++ix) {
    const double x = out_grid[ix];
    std::array<double, kTaperCuts> acc{};
    for (std::size_t jx = 0; jx < nxi; ++jx) {
      const double ph = rule_xi.nodes[jx] * x;
      const double wc = rule_xi.weights[jx] * std::cos(ph);
      const double ws = rule_xi.weights[jx] * std::sin(ph);
      for (int i = 0; i < kTaperCuts; ++i)
        acc[i] += wc * Av[jx][i] + ws * Bv[jx][i];
    }
    out.values[ix] =
        fit_tail(Bi.data(), acc.data(), kTaperCuts).value / (2.0 * M_PI);
  }
  return out;
}

std::string to_csv(const ExpansionReport& report) {
  std::string out = "N,probe_index,x,abs_error,lp_error,tail_bound\n";
  char buf[160];
  for (std::size_t N = 0; N < report.abs_errors.size(); ++N) {
    for (std::size_t i = 0; i < report.probes.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%zu,%.12g,%.12g,%.12g,%.12g\n", N,
                    i, report.probes[i], report.abs_errors[N][i],
                    report.lp_errors[N], report.tail_bounds[N][i]);
      out += buf;
    }
  }
  return out;
}

}  // namespace prolatekit::expansions
