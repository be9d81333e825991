#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "prolatekit/quadrature.hpp"
#include "prolatekit/sampled.hpp"
#include "prolatekit/specfun.hpp"

using namespace prolatekit;

TEST_CASE("gauss_legendre integrates monomials exactly up to design degree") {
  const auto rule = quad::gauss_legendre(16, -1.0, 2.5);
  CHECK(rule.design_degree == 31);
  for (int k = 0; k <= rule.design_degree; k += 5) {
    const double got = rule.integrate([k](double x) { return std::pow(x, k); });
    const double expect =
        (std::pow(2.5, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }
  for (double w : rule.weights) CHECK(w > 0.0);
}

TEST_CASE("composite rule handles oscillatory integrands") {
  const double c = 25.0;
  const auto rule = quad::oscillatory_rule(0.0, 10.0, c);
  const double got = rule.integrate([c](double x) { return std::sin(c * x); });
  const double expect = (1.0 - std::cos(c * 10.0)) / c;
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("graded rule resolves sqrt-type oscillation near zero") {
  const auto rule = quad::graded_rule(0.0, 9.0, 60, 10);
  const double got =
      rule.integrate([](double u) { return std::cos(10.0 * std::sqrt(u)); });
  const double ref = oracles::adaptive_quad(
      [](double u) { return std::cos(10.0 * std::sqrt(u)); }, 0.0, 9.0, 1e-13);
  CHECK(got == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("legendre orthogonality via quadrature") {
  const auto rule = quad::gauss_legendre(64, -1.0, 1.0);
  for (int n = 0; n <= 30; n += 6) {
    for (int m = n; m <= 30; m += 6) {
      const double got = rule.integrate([n, m](double x) {
        return specfun::legendre_p(n, x) * specfun::legendre_p(m, x);
      });
      const double expect = (n == m) ? 2.0 / (2.0 * n + 1.0) : 0.0;
      CHECK(std::abs(got - expect) < 1e-12);
    }
  }
}

TEST_CASE("cubic spline reproduces smooth functions") {
  const auto grid = uniform_grid(-3.0, 3.0, 301);
  const auto f = sample([](double x) { return std::exp(-x * x) * std::cos(3 * x); },
                        grid, DomainTag::RealLineTruncated);
  const CubicSpline s(f);
  for (double x = -2.9; x < 2.9; x += 0.173) {
    CHECK(std::abs(s(x) - std::exp(-x * x) * std::cos(3 * x)) < 1e-6);
  }
  CHECK(s(5.0) == 0.0);
}

TEST_CASE("sampled function validation") {
  SampledFunction f;
  f.grid = {0.0, 1.0, 0.5};
  f.values = {1.0, 2.0, 3.0};
  CHECK_THROWS(f.validate());
  f.grid = {0.0, 0.5, 1.0};
  f.values = {1.0, std::nan(""), 3.0};
  CHECK_THROWS(f.validate());
}
