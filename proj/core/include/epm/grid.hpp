#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace epm {

// Cell-centered radial grid on (0, r_max]; node i sits at (i+1/2)h.
// Excluding r = 0 keeps the 2v/r terms regular; origin behavior comes
// from parity ghost values instead.
struct RadialGrid {
  double r_max = 0.0;
  int n = 0;

  RadialGrid() = default;
  RadialGrid(double r_max_, int n_);

  double h() const { return r_max / n; }
  double node(int i) const { return (i + 0.5) * h(); }
};

// Cell-centered uniform box [-L, L]^3, n points per axis.
struct BoxGrid {
  double half_width = 0.0;
  int n = 0;

  BoxGrid() = default;
  BoxGrid(double half_width_, int n_);

  double h() const { return 2.0 * half_width / n; }
  double node(int i) const { return -half_width + (i + 0.5) * h(); }
  std::size_t size() const {
    return std::size_t(n) * std::size_t(n) * std::size_t(n);
  }
  std::size_t index(int i, int j, int k) const {
    return (std::size_t(i) * n + j) * n + k;
  }
};

using Geometry = std::variant<RadialGrid, BoxGrid>;

enum class Rank { scalar, radial_vector, vector3 };

enum class Parity { even, odd };

// Sampled field on a radial or box grid. Component-major storage for
// vector3 fields: samples[c * npoints + idx].
struct GridFunction {
  Geometry geom;
  Rank rank = Rank::scalar;
  std::vector<double> samples;

  GridFunction() = default;
  GridFunction(Geometry g, Rank r);

  std::size_t npoints() const;
  int ncomponents() const {
    return rank == Rank::vector3 ? 3 : 1;
  }
  bool on_radial() const { return std::holds_alternative<RadialGrid>(geom); }
  const RadialGrid& radial() const { return std::get<RadialGrid>(geom); }
  const BoxGrid& box() const { return std::get<BoxGrid>(geom); }

  double& at(std::size_t idx, int comp = 0) {
    return samples[std::size_t(comp) * npoints() + idx];
  }
  double at(std::size_t idx, int comp = 0) const {
    return samples[std::size_t(comp) * npoints() + idx];
  }
};

bool same_geometry(const Geometry& a, const Geometry& b);

// Pointwise evaluation of a closed-form field at the grid nodes.
// Throws std::domain_error naming the node if f is non-finite there.
GridFunction sample_analytic(const std::function<double(double)>& f,
                             const RadialGrid& g,
                             Rank rank = Rank::scalar);
GridFunction sample_analytic(
    const std::function<double(double, double, double)>& f, const BoxGrid& g);

// f(x) = u(|x|); a radial-vector input becomes the 3-vector v(|x|) x/|x|.
// Monotone cubic interpolation in r. Requires g.half_width <= r_max.
GridFunction lift_radial_to_box(const GridFunction& u, const BoxGrid& g);

// 4th-order central differences; parity ghosts at r=0 on radial grids,
// one-sided stencils at the outer boundary (and at box faces).
GridFunction derivative(const GridFunction& u, int axis = 0,
                        Parity parity = Parity::even);

std::vector<double> fd_weights(double x0, const std::vector<double>& xs,
                               int order);

double max_abs(const GridFunction& u);

}  // namespace epm
