#include "prolatekit/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prolatekit {

void SampledFunction::validate() const {
  if (grid.size() < 2 || grid.size() != values.size())
    throw std::invalid_argument("SampledFunction: inconsistent sizes");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("SampledFunction: grid not increasing");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("SampledFunction: non-finite value");
}

SampledFunction sample(const std::function<double(double)>& f,
                       std::vector<double> grid, DomainTag tag) {
  SampledFunction s;
  s.grid = std::move(grid);
  s.values.resize(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) s.values[i] = f(s.grid[i]);
  s.domain = tag;
  s.validate();
  return s;
}

std::vector<double> uniform_grid(double a, double b, std::size_t count) {
  if (count < 2 || !(a < b))
    throw std::invalid_argument("uniform_grid: bad parameters");
  std::vector<double> g(count);
  const double h = (b - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = a + h * static_cast<double>(i);
  g.back() = b;
  return g;
}

CubicSpline::CubicSpline(const SampledFunction& f)
    : CubicSpline(f.grid, f.values) {}

CubicSpline::CubicSpline(const std::vector<double>& x,
                         const std::vector<double>& y)
    : x_(x), y_(y) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n)
    throw std::invalid_argument("CubicSpline: need >= 3 points");
  m_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    const double p = sig * m_[i - 1] + 2.0;
    m_[i] = (sig - 1.0) / p;
    u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
           (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
  }
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = m_[i] * m_[i + 1] + u[i];
}

double CubicSpline::operator()(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (hi == 0) hi = 1;
  if (hi >= x_.size()) hi = x_.size() - 1;
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * (h * h) / 6.0;
}

double CubicSpline::derivative(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (hi == 0) hi = 1;
  if (hi >= x_.size()) hi = x_.size() - 1;
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return (y_[hi] - y_[lo]) / h +
         ((3.0 * b * b - 1.0) * m_[hi] - (3.0 * a * a - 1.0) * m_[lo]) * h /
             6.0;
}

}  // namespace prolatekit
