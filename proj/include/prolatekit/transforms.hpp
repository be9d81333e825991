#pragma once

#include <string>
#include <vector>

#include "prolatekit/sampled.hpp"
#include "prolatekit/types.hpp"

namespace prolatekit::transforms {

// Hilbert transform H f(x) = (1/pi) PV int f(y)/(x-y) dy on the truncated
// domain of f (f is treated as zero outside its grid).  PV discretization:
// midpoint rule with the singularity halfway between nodes, symmetric pair
// summation, Richardson extrapolation in the step.  x must lie strictly
// inside the grid.
double hilbert_transform(const SampledFunction& f, double x);

enum class FourierRoute { Sinc, Hilbert };

// Band-limiting projector P_c f on the grid of f.
//   Sinc route:     int f(t) sin(c(x-t)) / (pi (x-t)) dt
//   Hilbert route:  sin(cx) H(f cos(c.))(x) - cos(cx) H(f sin(c.))(x)
// Both integrate over the truncated domain of f and close the slowly
// decaying resonant tail (an O(1/B) contribution for Bessel-type inputs) by
// an adaptive-order least-squares fit of v(B) against {1, 1/B, 1/B^2,
// 1/B^3} over nested, smoothly tapered window cuts.
// Throws std::runtime_error if the grid resolves frequency c with fewer
// than 8 nodes per period.  The overload taking out_grid evaluates the
// projection there instead of on the grid of f.
SampledFunction project_fourier(const SampledFunction& f, Bandwidth c,
                                FourierRoute route);
SampledFunction project_fourier(const SampledFunction& f, Bandwidth c,
                                FourierRoute route,
                                const std::vector<double>& out_grid);

// Hankel transform H^alpha f(x) = int_0^inf f(y) sqrt(xy) J_alpha(xy) dy on
// the truncated half-line domain of f, evaluated on out_grid (default: the
// grid of f).  tail_estimate records the magnitude of the fitted domain
// truncation correction; the transform throws std::runtime_error if it
// exceeds 1e-6 of the result's sup norm.
struct HankelTransformResult {
  SampledFunction g;
  double tail_estimate = 0.0;
};
HankelTransformResult hankel_transform(const SampledFunction& f, Order alpha);
HankelTransformResult hankel_transform(const SampledFunction& f, Order alpha,
                                       const std::vector<double>& out_grid);

enum class HankelRoute { Lommel, WeightedHilbert, Spectral };

// Hankel band-limiting projector P_c^alpha f on the grid of f.
//   Lommel route:           kernel quadrature with lommel_kernel below
//   WeightedHilbert route:  W1 f(x^2) - W2 f(x^2) on the u = y^2 grid, where
//     W1 f(u) = (pi c u^{1/4} J_alpha(c sqrt(u)) / 2)
//               * H(f(sqrt(v)) v^{1/4} J_{alpha-1}(c sqrt(v)))(u)
//     W2 f(u) = (pi c u^{3/4} J_{alpha-1}(c sqrt(u)) / 2)
//               * H(f(sqrt(v)) v^{-1/4} J_alpha(c sqrt(v)))(u)
//   Spectral route:         H^alpha(chi_[0,c] H^alpha f)
SampledFunction project_hankel(const SampledFunction& f, Order alpha,
                               Bandwidth c, HankelRoute route);
SampledFunction project_hankel(const SampledFunction& f, Order alpha,
                               Bandwidth c, HankelRoute route,
                               const std::vector<double>& out_grid);

// Kernel of P_c^alpha: sqrt(xy) c [y J_{alpha-1}(cy) J_alpha(cx)
// - x J_{alpha-1}(cx) J_alpha(cy)] / (x^2 - y^2), equal to
// sqrt(xy) int_0^c J_alpha(tx) J_alpha(ty) t dt by Lommel's integral.  The
// diagonal |x-y| < 1e-6 (1+x) uses the L'Hopital limit with
// J'_a = (J_{a-1} - J_{a+1})/2.
double lommel_kernel(Order alpha, Bandwidth c, double x, double y);

// Weight for the Muckenhoupt estimate: either omega(x) = x^beta on (0,inf)
// with exact interval averages, or a tabulated positive weight.
struct WeightSpec {
  bool power = true;
  double beta = 0.0;
  SampledFunction table;

  static WeightSpec power_weight(double beta);
  static WeightSpec tabulated(SampledFunction table);
};

// Dyadic + shifted-dyadic estimate of the A^p bracket
// sup_I (avg_I omega) (avg_I omega^{-q/p})^{p/q}, 1/p + 1/q = 1.
// level_sup[d] is the supremum over the family up to depth d (nondecreasing).
// A subinterval on which a factor is non-integrable marks the report as
// diverging from that level on and is excluded from the finite sup.
struct ApWeightReport {
  double p = 2.0;
  int depth = 0;
  std::vector<double> level_sup;
  bool diverging = false;
  int diverging_level = -1;
};
ApWeightReport muckenhoupt_estimate(const WeightSpec& omega, double p,
                                    double a, double b, int depth);

// Lower-bound operator norm scan: max over the family of the ratio
// ||op f||_q / ||f||_p in quadrature-weighted discrete norms.
enum class Projector { Fourier, Hankel };
struct NormRateReport {
  double p = 2.0;
  double q = 2.0;
  std::vector<std::string> labels;
  std::vector<double> ratios;
  std::vector<double> running_max;  // nondecreasing as the family grows
};
NormRateReport operator_norm_scan(Projector op, Order alpha, Bandwidth c,
                                  double p, double q,
                                  const std::vector<SampledFunction>& family,
                                  const std::vector<std::string>& labels);

// Quadrature-weighted discrete L^p norm of f over its truncated domain.
double lp_norm(const SampledFunction& f, double p);

// CSV serialization (one row per depth / per family member).
std::string to_csv(const ApWeightReport& report);
std::string to_csv(const NormRateReport& report);

}  // namespace prolatekit::transforms
