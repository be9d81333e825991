#pragma once

#include <string>
#include <vector>

#include "prolatekit/prolate.hpp"
#include "prolatekit/sampled.hpp"
#include "prolatekit/types.hpp"

namespace prolatekit::expansions {

// Diagnostics for the truncated expansions Psi_N f = sum_{n<=N} <f,psi_n>
// psi_n (and Phi_N for the circular family): coefficients, pointwise errors
// against the band-limiting projector at probe points, discrete L^p errors,
// and the absolute tail bound sum_{n>N} |a_n||psi_n(x_i)|.
struct ExpansionReport {
  double p = 2.0;
  std::vector<double> coefficients;       // a_n, n = 0 .. N_max
  std::vector<double> coefficient_tails;  // per-coefficient quadrature tail
  std::vector<double> probes;             // probe points x_i
  std::vector<double> reference;          // P_c f (P_c^alpha f) at the probes
  // abs_errors[N][i] = |Psi_N f(x_i) - P_c f(x_i)|
  std::vector<std::vector<double>> abs_errors;
  // tail_bounds[N][i] = sum_{n=N+1}^{N_max} |a_n||psi_n(x_i)|, nonincreasing
  // in N by construction
  std::vector<std::vector<double>> tail_bounds;
  // lp_errors[N] = || Psi_N f - P_c f ||_p on the diagnostic norm grid
  std::vector<double> lp_errors;
  // probes whose final pointwise error plateaus above 1e-3 (resolution or
  // truncation failure, not a counterexample)
  std::vector<int> flagged_probes;
  // least-squares log-log slope of the monotone error envelope vs N
  double envelope_rate = 0.0;
};

// Generic probe points x_i = i sqrt(2)/10 folded into [lo, hi]; irrational
// offsets avoid symmetric-node coincidences.
std::vector<double> default_probes(int count, double lo, double hi);

// Coefficients a_n = <f, psi_n> (resp. <f, phi_n^alpha>) for n <= N_max by
// truncated-domain quadrature with tapered-cut tail closure; partial sums
// are always evaluated in fixed ascending-n order.  Requires
// 0 <= N_max <= K - 10.
ExpansionReport expand(const SampledFunction& f,
                       const prolate::ProlateBasis& basis, int N_max);
ExpansionReport expand(const SampledFunction& f,
                       const prolate::CircularProlateBasis& basis, int N_max);

// Full convergence diagnostics at N_max = K - 10: the reference projection
// is computed on the frequency side (band indicator applied to the
// transform), independent of the expansion machinery.  Requires p > 1, or
// p = 1 with f certified band-limited (projection residual at the probes
// below 1e-6).
ExpansionReport converge_report(const SampledFunction& f,
                                const prolate::ProlateBasis& basis, double p,
                                const std::vector<double>& probes);
ExpansionReport converge_report(const SampledFunction& f,
                                const prolate::CircularProlateBasis& basis,
                                double p, const std::vector<double>& probes);

// || Psi_N f - P_c f ||_p tabulated against N (exploratory; no pass/fail).
ExpansionReport lp_divergence_probe(const SampledFunction& f,
                                    const prolate::ProlateBasis& basis,
                                    double p);
ExpansionReport lp_divergence_probe(const SampledFunction& f,
                                    const prolate::CircularProlateBasis& basis,
                                    double p);

// Frequency-side band-limiting reference for the Fourier family:
// P_c f(x) = (1/2 pi) int_{-c}^{c} fhat(xi) e^{i xi x} d xi with fhat by
// tapered-cut oscillatory quadrature.  Shares no code with project_fourier
// or the expansions.  (The circular family uses the spectral Hankel route.)
SampledFunction band_limit_reference(const SampledFunction& f, Bandwidth c,
                                     const std::vector<double>& out_grid);

// CSV rows (N, probe_index, x, abs_error, lp_error, tail_bound).
std::string to_csv(const ExpansionReport& report);

}  // namespace prolatekit::expansions
