#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "prolatekit/bases.hpp"
#include "prolatekit/prolate.hpp"
#include "prolatekit/quadrature.hpp"

using namespace prolatekit;
using bases::Family;

namespace {

// Independent construction of the band-side profiles: the prolate operator
// d/du[(1-u^2) d/du] - c^2 u^2 is pentadiagonal in the normalized Legendre
// basis and commutes with the concentration problem, so its eigenvectors
// give the |b_k^n| up to the unimodular phases of the Fourier images.
Eigen::MatrixXd commuting_operator(double c, int K) {
  auto a = [](int k) {
    return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
  };
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K, K);
  for (int k = 0; k < K; ++k) {
    const double am = (k == 0) ? 0.0 : a(k - 1);
    M(k, k) = -static_cast<double>(k) * (k + 1.0) -
              c * c * (am * am + a(k) * a(k));
    if (k + 2 < K) {
      M(k, k + 2) = -c * c * a(k) * a(k + 1);
      M(k + 2, k) = M(k, k + 2);
    }
  }
  return M;
}

}  // namespace

TEST_CASE("prolate basis: spectrum and orthogonal base change") {
  const auto basis = prolate::build_prolate_basis(Bandwidth{10.0}, 60);
  CHECK(basis.lambdas(0) > 0.999);
  CHECK(basis.lambdas(0) < 1.0);
  for (int n = 0; n + 1 < 60; ++n) {
    CHECK(basis.lambdas(n) > basis.lambdas(n + 1));
    CHECK(basis.lambdas(n + 1) >= 0.0);
  }
  const Eigen::MatrixXd G = basis.B.transpose() * basis.B;
  CHECK((G - Eigen::MatrixXd::Identity(60, 60)).cwiseAbs().maxCoeff() < 1e-10);
  // Columns have pure parity: b_k^n vanishes for k-n odd.
  for (int n = 0; n < 50; ++n)
    for (int k = (n + 1) % 2; k < 60; k += 2)
      CHECK(std::abs(basis.B(k, n)) < 1e-10);
  CHECK(basis.polluted(55));
  CHECK(!basis.polluted(49));
}

TEST_CASE("prolate coefficients match the commuting-operator oracle") {
  for (double c : {1.0, 10.0}) {
    const int K = 60;
    const auto basis = prolate::build_prolate_basis(Bandwidth{c}, K);
    const int K2 = 120;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        commuting_operator(c, K2));
    // Eigenvalues ascending; the prolate order runs from the top.
    for (int n = 0; n <= 20; ++n) {
      const Eigen::VectorXd v = es.eigenvectors().col(K2 - 1 - n);
      for (int k = 0; k < 40; ++k) {
        CHECK(std::abs(std::abs(v(k)) - std::abs(basis.B(k, n))) < 1e-8);
      }
    }
  }
}

TEST_CASE("double orthogonality on the concentration interval") {
  const auto basis = prolate::build_prolate_basis(Bandwidth{5.0}, 40);
  const auto rule = quad::oscillatory_rule(-1.0, 1.0, 5.0, 31, 11);
  for (int n : {0, 1, 3, 7, 12}) {
    for (int m : {0, 1, 3, 7, 12}) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        s += rule.weights[q] *
             prolate::evaluate_psi(basis, n, rule.nodes[q]) *
             prolate::evaluate_psi(basis, m, rule.nodes[q]);
      const double expect = (n == m) ? basis.lambdas(n) : 0.0;
      CHECK(std::abs(s - expect) < 1e-9);
    }
  }
}

TEST_CASE("full-line orthonormality and basis-change consistency") {
  const int K = 40;
  const auto basis = prolate::build_prolate_basis(Bandwidth{5.0}, K);
  const Eigen::MatrixXd M =
      bases::gram_full_line(Family::Fourier, Order{0.0}, Bandwidth{5.0}, K);
  const Eigen::MatrixXd S = basis.B.transpose() * M * basis.B;
  CHECK((S.topLeftCorner(K - 10, K - 10) -
         Eigen::MatrixXd::Identity(K - 10, K - 10))
            .cwiseAbs()
            .maxCoeff() < 1e-6);
  // <j_k, psi_n> = b_k^n
  CHECK((M * basis.B - basis.B).topLeftCorner(K - 10, K - 10)
            .cwiseAbs()
            .maxCoeff() < 1e-6);
}

TEST_CASE("Rayleigh-quotient extremality of the eigenvalues") {
  const int K = 30;
  const Eigen::MatrixXd A =
      bases::gram_time_limited(Family::Fourier, Order{0.0}, Bandwidth{3.0}, K);
  const auto basis = prolate::build_prolate_basis(Bandwidth{3.0}, K);
  std::mt19937 rng(20240817);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n = 0; n <= 5; ++n) {
    // Projector onto the complement of the first n eigenvectors.
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(K, K);
    for (int m = 0; m < n; ++m)
      P -= basis.B.col(m) * basis.B.col(m).transpose();
    double best = 0.0;
    Eigen::VectorXd vbest;
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXd v(K);
      for (int k = 0; k < K; ++k) v(k) = gauss(rng);
      v = P * v;
      v.normalize();
      const double r = v.dot(A * v);
      CHECK(r <= basis.lambdas(n) + 1e-10);
      if (r > best) {
        best = r;
        vbest = v;
      }
    }
    // Power iteration from the best random start reaches the eigenvalue.
    for (int it = 0; it < 200; ++it) {
      vbest = P * (A * vbest);
      vbest.normalize();
    }
    CHECK(vbest.dot(A * vbest) ==
          doctest::Approx(basis.lambdas(n)).epsilon(1e-8));
  }
}

TEST_CASE("stability under K enlargement") {
  const auto b1 = prolate::build_prolate_basis(Bandwidth{5.0}, 40);
  const auto b2 = prolate::build_prolate_basis(Bandwidth{5.0}, 50);
  for (int n = 0; n < 20; ++n) {
    CHECK(std::abs(b1.lambdas(n) - b2.lambdas(n)) < 1e-8);
    for (int k = 0; k < 20; ++k)
      CHECK(std::abs(b1.B(k, n) - b2.B(k, n)) < 1e-8);
  }
}

TEST_CASE("evaluate_psi: parity and pointwise size") {
  const auto basis = prolate::build_prolate_basis(Bandwidth{10.0}, 60);
  for (int n : {0, 1, 4, 9, 16}) {
    for (double x : {0.3, 1.1, 1.9}) {
      const double plus = prolate::evaluate_psi(basis, n, x);
      const double minus = prolate::evaluate_psi(basis, n, -x);
      CHECK(std::abs(minus - (n % 2 == 0 ? plus : -plus)) < 1e-8);
    }
  }
  // n^2 sup |psi_n| stays bounded over the working range.  It is far from
  // constant: once the concentration point n/c leaves [-2,2] the sup decays
  // superexponentially, so only the upper bound is meaningful.
  std::vector<double> prods;
  for (int n = 10; n <= 45; n += 5) {
    double sup = 0.0;
    for (double x = -2.0; x <= 2.0; x += 0.05)
      sup = std::max(sup, std::abs(prolate::evaluate_psi(basis, n, x)));
    prods.push_back(n * n * sup);
  }
  const double hi = *std::max_element(prods.begin(), prods.end());
  CHECK(*std::min_element(prods.begin(), prods.end()) > 0.0);
  CHECK(hi < 4.0 * prods.front());
}

TEST_CASE("circular prolate basis: orthogonality and positivity") {
  const auto basis =
      prolate::build_circular_prolate_basis(Order{0.5}, Bandwidth{5.0}, 30);
  for (int n = 0; n + 1 < 30; ++n)
    CHECK(basis.lambdas(n) > basis.lambdas(n + 1));
  CHECK(basis.lambdas(0) < 1.0);
  const Eigen::MatrixXd G = basis.B.transpose() * basis.B;
  CHECK((G - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);

  // Double orthogonality on (0,1).
  const auto rule = quad::oscillatory_rule(1e-9, 1.0, 5.0, 31, 11);
  for (int n : {0, 2, 5}) {
    for (int m : {0, 2, 5}) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        s += rule.weights[q] *
             prolate::evaluate_phi(basis, n, rule.nodes[q]) *
             prolate::evaluate_phi(basis, m, rule.nodes[q]);
      const double expect = (n == m) ? basis.lambdas(n) : 0.0;
      CHECK(std::abs(s - expect) < 1e-9);
    }
  }

  // Full-domain orthonormality via the exact-tail Gram.
  const Eigen::MatrixXd M =
      bases::gram_full_line(Family::Hankel, Order{0.5}, Bandwidth{5.0}, 30);
  const Eigen::MatrixXd S = basis.B.transpose() * M * basis.B;
  CHECK((S.topLeftCorner(20, 20) - Eigen::MatrixXd::Identity(20, 20))
            .cwiseAbs()
            .maxCoeff() < 1e-6);

  // phi_0 keeps one sign on (0,1).
  const double s0 = prolate::evaluate_phi(basis, 0, 0.5) > 0.0 ? 1.0 : -1.0;
  for (double x = 0.01; x < 1.0; x += 0.017)
    CHECK(s0 * prolate::evaluate_phi(basis, 0, x) > 0.0);
}

TEST_CASE("alpha = 1/2 circular prolates are sqrt(2) times odd prolates") {
  const auto circ =
      prolate::build_circular_prolate_basis(Order{0.5}, Bandwidth{5.0}, 30);
  const auto full = prolate::build_prolate_basis(Bandwidth{5.0}, 61);
  for (int n = 0; n <= 8; ++n) {
    CHECK(std::abs(circ.lambdas(n) - full.lambdas(2 * n + 1)) < 1e-10);
    double dev = 0.0;
    for (double x = 0.05; x <= 2.0; x += 0.05) {
      const double lhs = prolate::evaluate_phi(circ, n, x);
      const double rhs =
          std::sqrt(2.0) * prolate::evaluate_psi(full, 2 * n + 1, x);
      dev = std::max(dev, std::min(std::abs(lhs - rhs), std::abs(lhs + rhs)));
    }
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("decay certificates") {
  // The Fourier family steps through Bessel orders two at a time, so the
  // first off-diagonal coefficient behaves like c^2/(16 n): the product
  // |b_{n+2}^n| n^2 grows linearly in n and no constant can cover the
  // n^{|k-n|} envelope.  The certificate must report that honestly.
  const auto basis = prolate::build_prolate_basis(Bandwidth{10.0}, 60);
  const auto cert = prolate::certify_decay(basis, 10);
  CHECK_FALSE(cert.pass);
  CHECK(cert.C0 > 0.0);
  CHECK(cert.C1 > 0.0);
  CHECK(cert.n_values.front() == 10);
  CHECK(cert.n_values.back() == 50);
  // The n^{-2} envelope of b_0^n itself holds: its products are covered by
  // the constant fitted on the lower half of the range.
  for (double p : cert.b0_products) CHECK(p <= 1.1 * cert.C0);
  // |b_{n+2}^n| n approaches c^2/16; the n^2-weighted product grows.
  for (int n : {20, 30, 40}) {
    CHECK(std::abs(basis.B(n + 2, n)) * n ==
          doctest::Approx(100.0 / 16.0).epsilon(0.15));
  }
  CHECK(cert.bk_products.back() > 100.0 * cert.bk_products.front());

  // Dominant diagonal: |b_n^n| bounded below over the certified range.
  for (int n = 10; n <= 50; n += 5) CHECK(std::abs(basis.B(n, n)) > 0.3);

  // Identity base change passes trivially with C = 1.
  prolate::ProlateBasis id{Bandwidth{1.0}, 40,
                           Eigen::MatrixXd::Identity(40, 40),
                           Eigen::VectorXd::LinSpaced(40, 0.9, 0.1)};
  const auto idcert = prolate::certify_decay(id, 10);
  CHECK(idcert.pass);
  CHECK(idcert.C1 == doctest::Approx(1.0));

  // The Hankel family steps one order at a time, so the n^{-|k-n|} envelope
  // does hold there: flat products of size about c^2/32.
  for (double alpha : {0.0, 0.5, 2.0}) {
    const auto hankel = prolate::build_circular_prolate_basis(
        Order{alpha}, Bandwidth{10.0}, 40);
    const auto hcert = prolate::certify_decay(hankel, 10);
    CHECK(hcert.pass);
    CHECK(hcert.C1 < 10.0);
  }
}

TEST_CASE("lp growth of prolate norms stays below the 1/2 exponent") {
  const auto basis = prolate::build_prolate_basis(Bandwidth{5.0}, 50);
  const double R = 40.0;
  const auto rule = quad::oscillatory_rule(0.0, R, 5.0, 64, 10);
  const std::vector<double> ns = {10, 14, 20, 28, 38};
  for (double p : {1.5, 2.0, 3.0}) {
    std::vector<double> vals;
    for (double nd : ns) {
      const int n = static_cast<int>(nd);
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        s += rule.weights[q] *
             std::pow(std::abs(prolate::evaluate_psi(basis, n, rule.nodes[q])),
                      p);
      vals.push_back(std::pow(2.0 * s, 1.0 / p));
    }
    CHECK(bases::fit_loglog_slope(ns, vals) < 0.5);
  }
}

TEST_CASE("json round trip") {
  const auto basis = prolate::build_prolate_basis(Bandwidth{2.0}, 32);
  const std::string text = prolate::to_json(basis);
  CHECK(text.find("\"family\":\"fourier\"") != std::string::npos);
  CHECK(text.find("\"alpha\":null") != std::string::npos);
  const auto back = prolate::prolate_from_json(text);
  CHECK(back.K == 32);
  CHECK(back.c.c == 2.0);
  CHECK((back.B - basis.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.lambdas - basis.lambdas).cwiseAbs().maxCoeff() == 0.0);

  const auto circ =
      prolate::build_circular_prolate_basis(Order{0.5}, Bandwidth{2.0}, 30);
  const auto cback = prolate::circular_from_json(prolate::to_json(circ));
  CHECK(cback.alpha.alpha == 0.5);
  CHECK((cback.B - circ.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(prolate::prolate_from_json(prolate::to_json(circ)));
}
