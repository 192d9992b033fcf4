#pragma once

// interval.hpp -- a closed real interval [a, b] with a < b.

#include <cmath>
#include <stdexcept>

namespace quadcert {

/// Closed interval [a, b]. Construction enforces finite endpoints and a < b,
/// so downstream code never has to re-validate orientation or degeneracy.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a_) || !std::isfinite(b_))
      throw std::invalid_argument("Interval endpoints must be finite");
    if (!(a_ < b_))
      throw std::invalid_argument("Interval requires a < b");
  }

  double length() const noexcept { return b - a; }
  double midpoint() const noexcept { return a + 0.5 * (b - a); }
  bool contains(double x) const noexcept { return a <= x && x <= b; }
};

}  // namespace quadcert
