#include "prolatekit/detail/tailfit.hpp"

#include <algorithm>
#include <cmath>

namespace prolatekit::detail {

std::array<double, kTaperCuts> cut_fractions() {
  std::array<double, kTaperCuts> s{};
  for (int i = 0; i < kTaperCuts; ++i) s[i] = 0.5 + 0.5 * (i + 1) / kTaperCuts;
  return s;
}

double taper_weight(double frac, double edge) {
  const double t = (edge - frac) / (edge * (1.0 - kTaperStart));
  if (t >= 1.0) return 1.0;
  if (t <= 0.0) return 0.0;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return t3 * t3 *
         (462.0 +
          t * (-1980.0 +
               t * (3465.0 + t * (-3080.0 + t * (1386.0 - 252.0 * t)))));
}

std::vector<TaperRow> taper_table(const std::vector<double>& fracs,
                                  const std::array<double, kTaperCuts>& cuts) {
  std::vector<TaperRow> chi(fracs.size());
  for (std::size_t j = 0; j < fracs.size(); ++j)
    for (int i = 0; i < kTaperCuts; ++i)
      chi[j][i] = taper_weight(fracs[j], cuts[i]);
  return chi;
}

// The m x m normal equations are solved by Gaussian elimination with
// partial pivoting; s spans [1,2], so the system is well conditioned.
bool fit_poly(const double* B, const double* v, int n, int m, double* x0,
              double* rms) {
  const double bmax = B[n - 1];
  double A[5][6] = {};
  for (int i = 0; i < n; ++i) {
    const double s = bmax / B[i];
    double u[5] = {1.0, 0, 0, 0, 0};
    for (int a = 1; a < m; ++a) u[a] = u[a - 1] * s;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) A[a][b] += u[a] * u[b];
      A[a][m] += u[a] * v[i];
    }
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int row = col + 1; row < m; ++row)
      if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
    for (int b = 0; b <= m; ++b) std::swap(A[col][b], A[piv][b]);
    if (A[col][col] == 0.0) return false;
    for (int row = col + 1; row < m; ++row) {
      const double fac = A[row][col] / A[col][col];
      for (int b = col; b <= m; ++b) A[row][b] -= fac * A[col][b];
    }
  }
  double x[5];
  for (int a = m - 1; a >= 0; --a) {
    double acc = A[a][m];
    for (int b = a + 1; b < m; ++b) acc -= A[a][b] * x[b];
    x[a] = acc / A[a][a];
  }
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = bmax / B[i];
    double u = 1.0, fit = 0.0;
    for (int a = 0; a < m; ++a) {
      fit += x[a] * u;
      u *= s;
    }
    ss += (v[i] - fit) * (v[i] - fit);
  }
  *x0 = x[0];
  *rms = std::sqrt(ss / n);
  return true;
}

TailFit fit_tail(const double* B, const double* v, int n) {
  if (n <= 0) return {0.0, 0.0};
  if (n < 5) return {v[n - 1], n > 1 ? std::abs(v[n - 1] - v[0]) : 0.0};
  double x[5], r[5];
  for (int m = 1; m <= 4; ++m)
    if (!fit_poly(B, v, n, m, &x[m], &r[m]))
      return {v[n - 1], std::abs(v[n - 1] - v[0])};
  // Grow the model order only while each extra term keeps explaining the
  // data; once the residual stops dropping the higher-order extrapolation
  // would only amplify quadrature noise into both the value and the
  // sensitivity estimate.
  int m = 1;
  while (m < 4 && r[m + 1] < 0.25 * r[m]) ++m;
  const int m2 = m < 4 ? m + 1 : 3;
  // model-order sensitivity: a neglected/spurious term moves the
  // extrapolated limit by about |x_m - x_m2|
  return {x[m], r[m] + std::abs(x[m] - x[m2])};
}

}  // namespace prolatekit::detail
