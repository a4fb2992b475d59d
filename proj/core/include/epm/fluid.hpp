#pragma once

#include <array>

#include "epm/grid.hpp"

namespace epm {

// Polytropic equation of state p = K rho^gamma, 1 < gamma < 5/3.
struct EosParams {
  double K = 1.0;
  double gamma = 6.0 / 5.0;

  void validate() const;

  // exponent in rho = c * w^beta
  double beta() const { return 2.0 / (gamma - 1.0); }
  // w = makino_coeff() * rho^{(gamma-1)/2}
  double makino_coeff() const;
  // rho = density_coeff() * w^beta
  double density_coeff() const;
};

// State of the first-order system: sound-speed variable w and velocity v
// (radial_vector on radial grids, vector3 on boxes).
struct FluidState {
  GridFunction w;
  GridFunction v;
  double t = 0.0;
};

FluidState zero_state(const Geometry& geom);

// Sound-speed variable of the symmetrized system. Scalar fields in, same
// geometry out; negative densities are rejected.
GridFunction makino_from_density(const GridFunction& rho, const EosParams& eos);
GridFunction density_from_makino(const GridFunction& w, const EosParams& eos);
GridFunction pressure_from_density(const GridFunction& rho,
                                   const EosParams& eos);

// Symmetric flux matrix A^c(U) of the first-order system in U = (w, v):
// diagonal v_c, plus the coupling ((gamma-1)/2) w between row 0 and row 1+c.
using Mat4 = std::array<std::array<double, 4>, 4>;
Mat4 flux_matrix(int c, double w, const std::array<double, 3>& v,
                 const EosParams& eos);

// Eigenvalues of n . A: {v.n, v.n, v.n - a, v.n + a}, a = ((gamma-1)/2)|w|.
std::array<double, 4> flux_eigenvalues(const std::array<double, 3>& n, double w,
                                       const std::array<double, 3>& v,
                                       const EosParams& eos);

// Steady self-gravitating gamma = 6/5 ball with scale a:
//   rho = a^{5/2} (a^2 + r^2)^{-5/2},  K = 2 pi / 9.
struct StaticSolution {
  EosParams eos;              // gamma = 6/5, K = 2 pi / 9
  double scale = 1.0;         // a
  GridFunction rho;
  GridFunction w;             // Makino variable of rho
  GridFunction phi;           // potential, -> 0 at infinity
  double mass = 0.0;          // (4 pi / 3) sqrt(a)

  double rho_exact(double r) const;
  double w_exact(double r) const;
  double phi_exact(double r) const;
};

StaticSolution static_profile(const RadialGrid& g, double scale = 1.0);

}  // namespace epm
