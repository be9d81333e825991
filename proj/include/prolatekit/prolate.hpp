#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "prolatekit/bases.hpp"
#include "prolatekit/types.hpp"

namespace prolatekit::prolate {

// Prolate spheroidal basis: psi_n = sum_k B(k,n) j_{k,c}, lambdas are the
// concentration eigenvalues in decreasing order.  Columns follow the sign
// convention that the largest-magnitude entry is positive.  The top `margin`
// columns are truncation-polluted and flagged by polluted().  Eigenvalues
// beyond index resolved() have underflown double precision: the reported
// values are the (tiny, still decreasing) numerical spectrum of the
// discretized form, not accurate values of the true exponentially small
// lambda_n.
struct ProlateBasis {
  Bandwidth c;
  int K = 0;
  Eigen::MatrixXd B;
  Eigen::VectorXd lambdas;
  int margin = 10;

  bool polluted(int n) const { return n >= K - margin; }
  int resolved() const {
    int r = 0;
    while (r < K && lambdas(r) > 1e-13) ++r;
    return r;
  }
};

// Circular (Hankel) prolate basis: phi_n = sum_m B(m,n) tilde-j_{m,alpha,c}.
struct CircularProlateBasis {
  Order alpha;
  Bandwidth c;
  int K = 0;
  Eigen::MatrixXd B;
  Eigen::VectorXd lambdas;
  int margin = 10;

  bool polluted(int n) const { return n >= K - margin; }
  int resolved() const {
    int r = 0;
    while (r < K && lambdas(r) > 1e-13) ++r;
    return r;
  }
};

// Default truncation: past the 2c/pi eigenvalue plunge with headroom for
// decay certificates.
int default_K(Bandwidth c);

// Diagonalize the time-concentration form in the spherical Bessel basis.
// Eigenvalues come from the SVD of the quadrature factor (nonnegative and
// decreasing by construction); coefficient columns come from the band-side
// differential operator that commutes with the concentration problem, which
// stays accurate past the eigenvalue plunge where the quadratic form can no
// longer separate eigenvectors.  Throws std::runtime_error if two resolvable
// eigenvalues (both above 1e-12) are closer than 1e-13.
ProlateBasis build_prolate_basis(Bandwidth c, int K);
CircularProlateBasis build_circular_prolate_basis(Order alpha, Bandwidth c,
                                                  int K);

// psi_n / phi_n at a point (coefficients summed in ascending k order).
double evaluate_psi(const ProlateBasis& basis, int n, double x);
double evaluate_phi(const CircularProlateBasis& basis, int n, double x);
std::vector<double> evaluate_psi(const ProlateBasis& basis, int n,
                                 const std::vector<double>& xs);
std::vector<double> evaluate_phi(const CircularProlateBasis& basis, int n,
                                 const std::vector<double>& xs);

// Coefficient-decay certificate: checks |b_0^n| <= C0 n^{-2} and
// |b_k^n| <= C1 n^{-|k-n|} over n in [n0, K-10], constants fitted on the
// lower half of that range and required to cover the upper half within 10%.
struct DecayCertificate {
  int n0 = 10;
  double C0 = 0.0;
  double C1 = 0.0;
  bool pass = false;
  std::vector<int> n_values;
  std::vector<double> b0_products;  // |b_0^n| n^2
  std::vector<double> bk_products;  // sup_{k>=1} |b_k^n| n^{|k-n|}
};

DecayCertificate certify_decay(const ProlateBasis& basis, int n0 = 10);
DecayCertificate certify_decay(const CircularProlateBasis& basis, int n0 = 10);

// JSON persistence:
// {"family","alpha","c","K","lambdas","B"} with B[k][n] = b_k^n and numbers
// written with 17 significant digits.
std::string to_json(const ProlateBasis& basis);
std::string to_json(const CircularProlateBasis& basis);
ProlateBasis prolate_from_json(const std::string& text);
CircularProlateBasis circular_from_json(const std::string& text);

}  // namespace prolatekit::prolate
