#include "prolatekit/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace prolatekit::quad {

namespace {

// Gauss-Legendre nodes/weights on (-1,1), Newton iteration on P_n.
void gauss_legendre_unit(int n, std::vector<double>& x,
                         std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

void append_panel(QuadratureRule& rule, const std::vector<double>& xu,
                  const std::vector<double>& wu, double pa, double pb) {
  const double mid = 0.5 * (pa + pb);
  const double hal = 0.5 * (pb - pa);
  for (std::size_t i = 0; i < xu.size(); ++i) {
    rule.nodes.push_back(mid + hal * xu[i]);
    rule.weights.push_back(hal * wu[i]);
  }
}

}  // namespace

QuadratureRule gauss_legendre(int npts, double a, double b) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts < 1");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
  std::vector<double> xu, wu;
  gauss_legendre_unit(npts, xu, wu);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.design_degree = 2 * npts - 1;
  append_panel(rule, xu, wu, a, b);
  return rule;
}

QuadratureRule composite_gauss(double a, double b, int panels, int pts) {
  if (panels < 1 || pts < 1)
    throw std::invalid_argument("composite_gauss: bad sizes");
  if (!(a < b)) throw std::invalid_argument("composite_gauss: need a < b");
  std::vector<double> xu, wu;
  gauss_legendre_unit(pts, xu, wu);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.design_degree = 2 * pts - 1;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    append_panel(rule, xu, wu, a + p * h, a + (p + 1) * h);
  return rule;
}

QuadratureRule oscillatory_rule(double a, double b, double angfreq,
                                int min_panels, int pts) {
  const double periods = std::abs(angfreq) * (b - a) / (2.0 * M_PI);
  // >= 8 nodes per period
  int panels = static_cast<int>(std::ceil(periods * 8.0 / pts)) + 1;
  if (panels < min_panels) panels = min_panels;
  return composite_gauss(a, b, panels, pts);
}

QuadratureRule graded_rule(double a, double b, int panels, int pts,
                           double grading) {
  if (panels < 1 || pts < 1 || grading <= 1.0)
    throw std::invalid_argument("graded_rule: bad parameters");
  if (!(a < b)) throw std::invalid_argument("graded_rule: need a < b");
  std::vector<double> xu, wu;
  gauss_legendre_unit(pts, xu, wu);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.design_degree = 2 * pts - 1;
  // Panel edges at a + (b-a) * r^(panels-k), geometric towards a.
  std::vector<double> edges(panels + 1);
  edges[0] = a;
  for (int k = 1; k <= panels; ++k)
    edges[k] = a + (b - a) * std::pow(grading, -(double)(panels - k));
  for (int p = 0; p < panels; ++p)
    append_panel(rule, xu, wu, edges[p], edges[p + 1]);
  return rule;
}

}  // namespace prolatekit::quad
