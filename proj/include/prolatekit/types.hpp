#pragma once

#include <stdexcept>

namespace prolatekit {

// Band limit c > 0.
struct Bandwidth {
  double c;
  explicit Bandwidth(double c_) : c(c_) {
    if (!(c > 0.0)) throw std::invalid_argument("Bandwidth: c must be > 0");
  }
};

// Hankel/Bessel order alpha > -1/2.
struct Order {
  double alpha;
  explicit Order(double a) : alpha(a) {
    if (!(a > -0.5))
      throw std::invalid_argument("Order: alpha must be > -1/2");
  }
};

}  // namespace prolatekit
