#pragma once

#include <cstddef>
#include <vector>

namespace prolatekit::specfun {

// Bessel function of the first kind, real order.
//
// Evaluation strategy: ascending power series while the first series term
// dominates, Steed's continued fractions otherwise.  Negative non-integer
// orders are reached through the downward three-term recurrence from
// non-negative orders and require x > 0.
double bessel_j(double alpha, double x);

// J_{nu0}(x), J_{nu0+1}(x), ..., J_{nu0+count-1}(x) for nu0 >= 0, x >= 0.
// Downward recurrence seeded from two direct evaluations at the top order;
// falls back to a Miller run anchored at the largest element when the top
// values underflow.
std::vector<double> bessel_j_sequence(double nu0, std::size_t count, double x);

// Legendre polynomial P_n by the three-term recurrence.
double legendre_p(int n, double x);

// Jacobi polynomial P_n^{(alpha,0)}, alpha > -1, normalized so that
// P_n^{(alpha,0)}(1) = Gamma(n+alpha+1) / (Gamma(n+1) Gamma(alpha+1)).
double jacobi_p(int n, double alpha, double x);

// log Gamma(x) for x > 0.  Throws std::domain_error at the poles x <= 0.
double ln_gamma(double x);

}  // namespace prolatekit::specfun
