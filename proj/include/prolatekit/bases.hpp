#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "prolatekit/quadrature.hpp"
#include "prolatekit/types.hpp"

namespace prolatekit::bases {

enum class Family { Fourier, Hankel };

// j_{n,c}(x) = sqrt((2n+1)/2) J_{n+1/2}(c x) / sqrt(x), extended to x < 0
// by j_{n,c}(-x) = (-1)^n j_{n,c}(x).
double spherical_j(int n, Bandwidth c, double x);

// j_{0,c}(x) .. j_{K-1,c}(x) in one downward-recurrence sweep.
std::vector<double> spherical_j_all(int K, Bandwidth c, double x);

// tilde-j_{n,alpha,c}(x) = sqrt(2(2n+alpha+1)) J_{2n+alpha+1}(c x) / sqrt(x),
// x > 0 only.
double spherical_j_hankel(int n, Order alpha, Bandwidth c, double x);

std::vector<double> spherical_j_hankel_all(int K, Order alpha, Bandwidth c,
                                           double x);

// Real profile of the Fourier transform of j_{n,c} on the band:
// sqrt((2n+1)/(2c)) P_n(xi/c) on [-c,c], zero outside.  The full transform
// is fourier_image_phase(n) times this profile; the phase was determined
// numerically against direct Fourier quadrature (see tests).
double fourier_image_j(int n, Bandwidth c, double xi);
std::complex<double> fourier_image_phase(int n);

// Hankel transform of tilde-j_{n,alpha,c}:
// sqrt(2(2n+alpha+1)/c) (x/c)^(alpha+1/2) P_n^{(alpha,0)}(1-2(x/c)^2)
// on (0,c], zero beyond c.
double hankel_image_j(int n, Order alpha, Bandwidth c, double x);

// Quadrature square root of the concentration quadratic form: X(q,k) =
// sqrt(w_q) basis_k(x_q) over (-1,1) (Fourier) or (0,1) (Hankel), so that
// the time-limited Gram is X^T X (positive semidefinite by construction).
struct ConcentrationFactor {
  Eigen::MatrixXd X;
  quad::QuadratureRule rule;
};
ConcentrationFactor time_limited_factor(Family family, Order alpha,
                                        Bandwidth c, int K);

// Gram matrix A_km of the time-limiting quadratic form in the orthonormal
// Bessel basis: integral of j_k j_m over (-1,1) for the Fourier family,
// of tilde-j_k tilde-j_m over (0,1) for the Hankel family.  Symmetrized.
Eigen::MatrixXd gram_time_limited(Family family, Order alpha, Bandwidth c,
                                  int K);

// Gram matrix of the Bessel families over the full line / half line:
// integral of j_k j_m over R (Fourier) or of tilde-j_k tilde-j_m over
// (0,inf) (Hankel).  Quadrature on a finite window closed with the exact
// Bessel tail identities (see detail below); equals the identity matrix up
// to quadrature error.
Eigen::MatrixXd gram_full_line(Family family, Order alpha, Bandwidth c,
                               int K);

namespace detail {
// Exact tails of integral_T^inf J_nu(t) J_mu(t) / t dt.
// For nu != mu this follows from the Wronskian-type antiderivative
// t (J_nu' J_mu - J_nu J_mu'); for nu == mu from the telescoped identity
// d/dT [J_nu^2 + 2 sum_{k>=1} J_{nu+k}^2] = 2 nu J_nu^2 / T.
double bessel_cross_tail(double nu, double mu, double T);
double bessel_square_tail(double nu, double T);
}  // namespace detail

struct LpNormResult {
  double value = 0.0;          // || x^{-1/2} J_nu(c x) ||_{L^p}
  double tail_estimate = 0.0;  // certified truncation-error estimate of value
  double domain_cut = 0.0;     // window edge R
};

// L^p norm of x^{-1/2} J_{n+1/2}(c x) over R (Fourier family, even/odd
// extension) or of x^{-1/2} J_{2n+alpha+1}(c x) over (0,inf) (Hankel
// family).  Numeric on [0,R] closed with the modulus/phase asymptotic tail;
// throws std::runtime_error if the truncation-error estimate exceeds
// 1e-8 of the value.
LpNormResult lp_norm_bessel(int n, double p, Family family, Order alpha,
                            Bandwidth c);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace prolatekit::bases
