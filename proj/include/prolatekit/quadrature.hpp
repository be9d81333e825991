#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

namespace prolatekit::quad {

// Nodes and positive weights on (a,b).  design_degree is the highest
// monomial degree integrated exactly (up to roundoff).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
  int design_degree = 0;

  template <typename F>
    requires std::invocable<F, double>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// Gauss-Legendre rule with npts points mapped to (a,b).
QuadratureRule gauss_legendre(int npts, double a, double b);

// Composite Gauss-Legendre rule: `panels` equal panels of `pts` points each.
QuadratureRule composite_gauss(double a, double b, int panels, int pts);

// Composite rule sized to resolve an oscillation of angular frequency
// `angfreq` with at least 8 nodes per period, and at least `min_panels`
// panels of `pts` Gauss points.
QuadratureRule oscillatory_rule(double a, double b, double angfreq,
                                int min_panels = 4, int pts = 12);

// Composite rule with panel widths graded geometrically towards `a`
// (for integrands oscillating like J(c sqrt(u)) near a = 0).
QuadratureRule graded_rule(double a, double b, int panels, int pts,
                           double grading = 1.6);

}  // namespace prolatekit::quad
