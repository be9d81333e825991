#pragma once

#include <array>
#include <vector>

namespace prolatekit::detail {

// Closure of slowly decaying truncation tails, shared by the projector /
// transform / coefficient quadratures.  Truncated integrals of Bessel-type
// integrands carry O(1/B) tails (the equal-frequency product has a nonzero
// mean ~ A/y^2).  Partial sums are recorded at kTaperCuts nested window cuts
// (fractions 0.5 .. 1 of the window), each tapered by a C^5 smootherstep
// over its outer 40%: the taper regions are self-similar, so the smooth
// resonant tail follows a polynomial model in 1/B exactly, while purely
// oscillatory truncation remainders are suppressed instead of aliasing into
// the fit.  The cut values are then extrapolated to B -> infinity by an
// adaptive-order least-squares fit against {1, 1/B, 1/B^2, 1/B^3}.

inline constexpr int kTaperCuts = 16;
inline constexpr double kTaperStart = 0.6;  // roll-off begins at 60% of a cut

struct TailFit {
  double value = 0.0;
  double err = 0.0;  // residual RMS + model-order sensitivity
};

// Cut radii as fractions of the window size, 0.5 .. 1.0.
std::array<double, kTaperCuts> cut_fractions();

// C^5 smootherstep: 1 below kTaperStart*edge, 0 above edge.
double taper_weight(double frac, double edge);

using TaperRow = std::array<double, kTaperCuts>;

// chi[j][i] = taper weight of the node with window fraction fracs[j] in the
// i-th cut window.
std::vector<TaperRow> taper_table(const std::vector<double>& fracs,
                                  const std::array<double, kTaperCuts>& cuts);

// Least-squares fit of v against {1, s, .., s^{m-1}} with s = B[n-1]/B;
// returns the constant term (the B -> infinity limit) and the RMS residual.
bool fit_poly(const double* B, const double* v, int n, int m, double* x0,
              double* rms);

// Extrapolated limit of the partial values v at window cuts B.
TailFit fit_tail(const double* B, const double* v, int n);

}  // namespace prolatekit::detail
