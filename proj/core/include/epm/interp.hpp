#pragma once

#include <vector>

#include "epm/grid.hpp"

namespace epm {

// Monotone cubic (Hermite with 4th-order slopes, Fritsch-Carlson limited)
// interpolant of a radial profile. Inside r_max it is C^1 and preserves
// monotonicity of the data; beyond r_max a power-law tail u(r_max)(r/r_max)^-p
// is used, with p fitted from the last decade of samples unless overridden.
class RadialInterpolant {
 public:
  RadialInterpolant(const RadialGrid& g, const std::vector<double>& values,
                    Parity parity = Parity::even,
                    double tail_exponent_override = 0.0);

  double operator()(double r) const;
  double tail_exponent() const { return tail_p_; }

 private:
  RadialGrid grid_;
  std::vector<double> r_;      // with 2 parity ghosts below r=0
  std::vector<double> v_;
  std::vector<double> slope_;  // limited Hermite slopes
  double tail_p_ = 0.0;
  double tail_value_ = 0.0;
  double tail_r_ = 0.0;
};

// Separable 4-point Lagrange (tricubic) interpolation on a box field.
// Returns 0 outside the box; near the faces the stencil is shifted inward.
class BoxInterpolant {
 public:
  explicit BoxInterpolant(const GridFunction& u, int comp = 0);
  double operator()(double x, double y, double z) const;

 private:
  BoxGrid grid_;
  const GridFunction* field_;
  int comp_;
};

}  // namespace epm
