#pragma once

#include "epm/dyadic.hpp"
#include "epm/grid.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

// Free-space potential of a density: Delta phi = 4 pi rho, phi -> 0 at
// infinity.
struct PotentialField {
  GridFunction phi;
  GridFunction grad;        // radial_vector on radial grids, vector3 on boxes
  double residual = 0.0;    // max |Delta_h phi - 4 pi rho| on interior nodes
  bool flagged = false;     // tail not integrable / tail or support too large
};

struct PoissonOptions {
  // density extrapolated as A r^-p + B r^-(p+2) beyond the radial grid
  double tail_exponent = 5.0;
  // flag the result when the tail correction exceeds this fraction of phi
  double tail_tol = 1e-2;
};

PotentialField solve_poisson_radial(const GridFunction& rho,
                                    const PoissonOptions& opt = {});

// Zero-padded convolution with -1/|x|; the singular cell carries the
// analytic cell average of the kernel. Gradient by 4th-order differences.
PotentialField solve_poisson_box(const GridFunction& rho,
                                 const PoissonOptions& opt = {});

// average of 1/|x| over the unit cube centered at the origin
double kernel_cell_average();

// Empirical constant of ||grad phi||_{s-1,delta+1} <= C ||rho||_{s-2,delta+2};
// requires delta in (-3/2, -1/2). Zero density gives 0 by convention.
double elliptic_estimate_report(const GridFunction& rho,
                                const PotentialField& field,
                                const WeightedNormSpec& spec,
                                const DyadicPartition& part);

}  // namespace epm
