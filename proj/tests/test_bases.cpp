#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "prolatekit/bases.hpp"
#include "prolatekit/quadrature.hpp"
#include "prolatekit/specfun.hpp"

using namespace prolatekit;
using bases::Family;

namespace {

// Closed forms for the first two Fourier-family elements.
double j0_closed(double c, double x) {
  if (std::abs(x) < 1e-10) return std::sqrt(c / M_PI);
  return std::sin(c * x) / (std::sqrt(M_PI * c) * x);
}

double j1_closed(double c, double x) {
  if (std::abs(x) < 1e-10) return 0.0;
  return std::sqrt(3.0 / (M_PI * c)) *
         (std::sin(c * x) / (c * x) - std::cos(c * x)) / x;
}

}  // namespace

TEST_CASE("spherical_j closed forms, parity, small-x limit") {
  const Bandwidth c{2.5};
  for (double x : {-3.1, -0.4, 0.2, 0.9, 4.7, 11.0}) {
    CHECK(bases::spherical_j(0, c, x) ==
          doctest::Approx(j0_closed(c.c, x)).epsilon(1e-12));
    CHECK(bases::spherical_j(1, c, x) ==
          doctest::Approx(j1_closed(c.c, x)).epsilon(1e-11));
  }
  for (int n : {0, 1, 2, 5, 8}) {
    const double plus = bases::spherical_j(n, c, 1.7);
    const double minus = bases::spherical_j(n, c, -1.7);
    CHECK(minus == doctest::Approx((n % 2 == 0) ? plus : -plus));
  }
  // Continuity across the series/limit switch near zero: j_n scales like
  // x^n there, so compare the scaled values on both sides of the cutoff.
  for (int n : {0, 1, 3}) {
    const double a =
        bases::spherical_j(n, c, 0.9e-8) / std::pow(0.9e-8, n);
    const double b =
        bases::spherical_j(n, c, 1.1e-8) / std::pow(1.1e-8, n);
    CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
  }
  CHECK(bases::spherical_j(0, c, 0.0) ==
        doctest::Approx(std::sqrt(c.c / M_PI)).epsilon(1e-14));
}

TEST_CASE("spherical_j_all matches scalar evaluation") {
  const Bandwidth c{7.0};
  for (double x : {-2.2, 0.31, 1.9, 6.5}) {
    const auto all = bases::spherical_j_all(30, c, x);
    for (int n = 0; n < 30; n += 4) {
      CHECK(all[n] == doctest::Approx(bases::spherical_j(n, c, x))
                          .epsilon(1e-11)
                          .scale(1e-200));
    }
  }
}

TEST_CASE("spherical_j_hankel definition and batch evaluation") {
  const Bandwidth c{3.0};
  const Order al{1.3};
  for (double x : {0.2, 1.1, 4.4}) {
    for (int n : {0, 1, 3, 7}) {
      const double nu = 2.0 * n + al.alpha + 1.0;
      const double expect = std::sqrt(2.0 * nu) *
                            specfun::bessel_j(nu, c.c * x) / std::sqrt(x);
      CHECK(bases::spherical_j_hankel(n, al, c, x) ==
            doctest::Approx(expect).epsilon(1e-12).scale(1e-200));
    }
    const auto all = bases::spherical_j_hankel_all(12, al, c, x);
    for (int n = 0; n < 12; ++n) {
      CHECK(all[n] == doctest::Approx(bases::spherical_j_hankel(n, al, c, x))
                          .epsilon(1e-11)
                          .scale(1e-200));
    }
  }
  CHECK_THROWS_AS(bases::spherical_j_hankel(0, al, c, 0.0), std::domain_error);
}

TEST_CASE("alpha = 1/2 Hankel elements are sqrt(2) times odd Fourier ones") {
  const Order half{0.5};
  for (double cc : {1.0, 5.0}) {
    const Bandwidth c{cc};
    for (int m : {0, 1, 2, 6}) {
      for (double x : {0.3, 1.4, 3.8}) {
        const double lhs = bases::spherical_j_hankel(m, half, c, x);
        const double rhs = std::sqrt(2.0) * bases::spherical_j(2 * m + 1, c, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13).scale(1e-200));
      }
    }
  }
}

TEST_CASE("exact Bessel tail formulas are self-consistent") {
  // integral over (T1, T2) by adaptive quadrature + tail at T2 must equal
  // the tail at T1.
  struct Pair {
    double nu, mu;
  };
  for (const auto& pr : {Pair{0.5, 0.5}, Pair{0.5, 4.5}, Pair{2.5, 6.5},
                         Pair{3.7, 3.7}, Pair{1.0, 5.0}}) {
    const double T1 = 7.0, T2 = 43.0;
    const double mid = oracles::adaptive_quad(
        [&pr](double t) {
          return specfun::bessel_j(pr.nu, t) * specfun::bessel_j(pr.mu, t) / t;
        },
        T1, T2, 1e-13, 48, 64);
    const double lhs = bases::detail::bessel_cross_tail(pr.nu, pr.mu, T1);
    const double rhs = mid + bases::detail::bessel_cross_tail(pr.nu, pr.mu, T2);
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
  // Full-range anchor: integral over (0,inf) of J_nu^2 / t equals 1/(2 nu).
  for (double nu : {0.5, 2.5, 9.5}) {
    const double head = oracles::adaptive_quad(
        [nu](double t) {
          const double j = specfun::bessel_j(nu, t);
          return j * j / std::max(t, 1e-300);
        },
        1e-12, 25.0, 1e-13, 48, 64);
    const double got = head + bases::detail::bessel_square_tail(nu, 25.0);
    CHECK(got == doctest::Approx(1.0 / (2.0 * nu)).epsilon(1e-10));
  }
}

TEST_CASE("Bessel bases are orthonormal over the full domain") {
  for (double cc : {1.0, 5.0, 10.0}) {
    const Bandwidth c{cc};
    const Eigen::MatrixXd A =
        bases::gram_full_line(Family::Fourier, Order{0.0}, c, 21);
    const double defect =
        (A - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff();
    CHECK(defect < 1e-8);
  }
  for (double aa : {0.0, 0.5, 2.0}) {
    const Eigen::MatrixXd A =
        bases::gram_full_line(Family::Hankel, Order{aa}, Bandwidth{5.0}, 16);
    const double defect =
        (A - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff();
    CHECK(defect < 1e-8);
  }
}

TEST_CASE("fourier_image_j inverts back to spherical_j") {
  const Bandwidth c{5.0};
  const auto rule = quad::gauss_legendre(400, -c.c, c.c);
  for (int n : {0, 1, 2, 3, 7, 12}) {
    const std::complex<double> phase = bases::fourier_image_phase(n);
    for (double x : {0.3, 1.7, 4.9, 8.2}) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        acc += rule.weights[q] * phase * bases::fourier_image_j(n, c, xi) *
               std::exp(std::complex<double>(0.0, x * xi));
      }
      acc /= std::sqrt(2.0 * M_PI);
      CHECK(std::abs(acc.imag()) < 1e-10);
      const double expect = bases::spherical_j(n, c, x);
      CHECK(std::abs(acc.real() - expect) <
            1e-13 + 1e-10 * std::abs(expect));
    }
  }
  CHECK(bases::fourier_image_j(3, c, 5.01) == 0.0);
  CHECK(bases::fourier_image_j(3, c, -5.01) == 0.0);
}

TEST_CASE("forward Fourier quadrature confirms image modulus and phase") {
  // F f(xi) = (2 pi)^{-1/2} int f(t) exp(-i xi t) dt, truncated at four
  // staggered windows whose average cancels the leading boundary
  // oscillations of both frequencies c - xi and c + xi.
  const Bandwidth c{2.0};
  for (int n : {0, 1, 2, 3, 4, 5}) {
    for (double xi : {0.5, 1.1}) {
      const double R0 = 300.0;
      const double d1 = M_PI / (c.c - xi), d2 = M_PI / (c.c + xi);
      const double ends[4] = {R0, R0 + d1, R0 + d2, R0 + d1 + d2};
      std::complex<double> avg{0.0, 0.0};
      for (double R : ends) {
        const auto rule = quad::oscillatory_rule(0.0, R, c.c + xi, 16, 10);
        double re = 0.0, im = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double t = rule.nodes[q];
          const double f = bases::spherical_j(n, c, t);
          re += rule.weights[q] * f * std::cos(xi * t);
          im -= rule.weights[q] * f * std::sin(xi * t);
        }
        // add the x < 0 half through parity
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        avg += std::complex<double>(re * (1.0 + s), im * (1.0 - s));
      }
      avg /= 4.0 * std::sqrt(2.0 * M_PI);
      const std::complex<double> expect =
          bases::fourier_image_phase(n) * bases::fourier_image_j(n, c, xi);
      CHECK(std::abs(avg - expect) < 2e-4);
    }
  }
}

TEST_CASE("hankel_image_j inverts back through the Hankel kernel") {
  const Bandwidth c{3.0};
  for (double aa : {0.0, 0.5, 2.0}) {
    const Order al{aa};
    const auto rule = quad::gauss_legendre(300, 0.0, c.c);
    for (int n : {0, 1, 4, 9}) {
      for (double x : {0.4, 1.1, 2.6, 5.0}) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double t = rule.nodes[q];
          acc += rule.weights[q] * bases::hankel_image_j(n, al, c, t) *
                 std::sqrt(t * x) * specfun::bessel_j(al.alpha, t * x);
        }
        const double expect = bases::spherical_j_hankel(n, al, c, x);
        CHECK(std::abs(acc - expect) < 1e-12 + 1e-7 * std::abs(expect));
      }
    }
  }
  CHECK(bases::hankel_image_j(2, Order{0.5}, c, 3.5) == 0.0);
}

TEST_CASE("band-side images are orthonormal on the band") {
  const Bandwidth c{4.0};
  const auto rf = quad::gauss_legendre(200, -c.c, c.c);
  for (int n = 0; n <= 10; n += 2) {
    for (int m = n; m <= 10; m += 3) {
      const double got = rf.integrate([&](double xi) {
        return bases::fourier_image_j(n, c, xi) *
               bases::fourier_image_j(m, c, xi);
      });
      CHECK(std::abs(got - (n == m ? 1.0 : 0.0)) < 1e-10);
    }
  }
  for (double aa : {0.0, 0.5, 2.0}) {
    const Order al{aa};
    const auto rh = quad::gauss_legendre(300, 0.0, c.c);
    for (int n = 0; n <= 8; n += 2) {
      for (int m = n; m <= 8; m += 3) {
        const double got = rh.integrate([&](double x) {
          return bases::hankel_image_j(n, al, c, x) *
                 bases::hankel_image_j(m, al, c, x);
        });
        CHECK(std::abs(got - (n == m ? 1.0 : 0.0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("time-limited Gram matrix: symmetry, parity, anchor, spectrum") {
  const Bandwidth c{1.0};
  const Eigen::MatrixXd A =
      bases::gram_time_limited(Family::Fourier, Order{0.0}, c, 24);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 24; ++k)
    for (int m = 0; m < 24; ++m)
      if ((k + m) % 2 == 1) CHECK(A(k, m) == 0.0);

  // A_00 = integral over (-1,1) of sin^2(x) / (pi x^2).
  const double a00 = oracles::adaptive_quad(
      [](double x) {
        if (std::abs(x) < 1e-8) return 1.0 / M_PI;
        const double s = std::sin(x);
        return s * s / (M_PI * x * x);
      },
      -1.0, 1.0, 1e-13);
  CHECK(A(0, 0) == doctest::Approx(a00).epsilon(1e-11));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);

  // Hankel anchor for alpha = 0.5, c = 2: tilde-j_0 is sqrt(2) j_1.
  const Bandwidth c2{2.0};
  const Eigen::MatrixXd H =
      bases::gram_time_limited(Family::Hankel, Order{0.5}, c2, 10);
  const double h00 = oracles::adaptive_quad(
      [&c2](double x) {
        const double v = std::sqrt(2.0) * j1_closed(c2.c, x);
        return v * v;
      },
      1e-12, 1.0, 1e-13);
  CHECK(H(0, 0) == doctest::Approx(h00).epsilon(1e-10));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esh(H);
  CHECK(esh.eigenvalues().minCoeff() > -1e-12);
  CHECK(esh.eigenvalues().maxCoeff() < 1.0 + 1e-10);
}

TEST_CASE("basis elements decay superexponentially in n at fixed x") {
  const Bandwidth c{1.0};
  double prev = std::abs(bases::spherical_j(20, c, 1.0));
  for (int n = 24; n <= 40; n += 4) {
    const double cur = std::abs(bases::spherical_j(n, c, 1.0));
    CHECK(cur < 1e-4 * prev);
    prev = cur;
  }
  CHECK(prev < 1e-40);
}

TEST_CASE("lp_norm_bessel: exact p=2 values and slope regimes") {
  for (double cc : {1.0, 5.0}) {
    const Bandwidth c{cc};
    for (int n : {0, 3, 10}) {
      const auto r = bases::lp_norm_bessel(n, 2.0, Family::Fourier, Order{0.0}, c);
      CHECK(r.value ==
            doctest::Approx(std::sqrt(2.0 / (2.0 * n + 1.0))).epsilon(1e-7));
      CHECK(r.tail_estimate <= 1e-8 * r.value);
    }
  }
  for (int n : {0, 2, 6}) {
    const double nu = 2.0 * n + 0.5 + 1.0;
    const auto r =
        bases::lp_norm_bessel(n, 2.0, Family::Hankel, Order{0.5}, Bandwidth{3.0});
    CHECK(r.value == doctest::Approx(std::sqrt(0.5 / nu)).epsilon(1e-7));
    CHECK(r.tail_estimate <= 1e-8 * r.value);
  }

  // Slopes in n of the L^p norms: about -1 + 1/p for p < 4 and
  // -5/6 + 1/(3p) for p > 4.
  const std::vector<double> ns = {8, 12, 18, 27, 40};
  for (double p : {1.5, 3.0}) {
    std::vector<double> vals;
    for (double n : ns)
      vals.push_back(bases::lp_norm_bessel(static_cast<int>(n), p,
                                           Family::Fourier, Order{0.0},
                                           Bandwidth{1.0})
                         .value);
    const double slope = bases::fit_loglog_slope(ns, vals);
    CHECK(std::abs(slope - (-1.0 + 1.0 / p)) < 0.12);
  }
  {
    std::vector<double> vals;
    for (double n : ns)
      vals.push_back(bases::lp_norm_bessel(static_cast<int>(n), 6.0,
                                           Family::Fourier, Order{0.0},
                                           Bandwidth{1.0})
                         .value);
    const double slope = bases::fit_loglog_slope(ns, vals);
    CHECK(std::abs(slope - (-5.0 / 6.0 + 1.0 / 18.0)) < 0.12);
  }
}
