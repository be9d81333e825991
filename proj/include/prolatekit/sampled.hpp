#pragma once

#include <functional>
#include <vector>

namespace prolatekit {

enum class DomainTag { RealLineTruncated, HalfLineTruncated, Interval };

// A function represented by its values on a strictly increasing grid.
struct SampledFunction {
  std::vector<double> grid;
  std::vector<double> values;
  DomainTag domain = DomainTag::Interval;

  double a() const { return grid.front(); }
  double b() const { return grid.back(); }
  void validate() const;  // throws std::invalid_argument on bad data
};

SampledFunction sample(const std::function<double(double)>& f,
                       std::vector<double> grid, DomainTag tag);

std::vector<double> uniform_grid(double a, double b, std::size_t count);

// Natural cubic spline through the samples; evaluates to 0 outside the grid
// (the sampled functions represent decaying or compactly supported data).
class CubicSpline {
 public:
  explicit CubicSpline(const SampledFunction& f);
  CubicSpline(const std::vector<double>& x, const std::vector<double>& y);

  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

}  // namespace prolatekit
