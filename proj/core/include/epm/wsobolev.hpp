#pragma once

#include <vector>

#include "epm/dyadic.hpp"
#include "epm/grid.hpp"

namespace epm {

// Parameters of one weighted-norm evaluation: regularity s, decay weight
// delta, shell truncation, and the fixed shell-box discretization.
struct WeightedNormSpec {
  double s = 2.6;
  double delta = -1.2;
  int j_max = 12;
  int shell_n = 32;
  double shell_half_width = 4.0;
  double tail_tol = 1e-6;

  void validate() const;
};

struct NormBreakdown {
  double total = 0.0;             // sum of weighted squared shell terms
  double tail = 0.0;              // geometric estimate of the untruncated remainder
  std::vector<double> shells;     // per-shell contributions
  bool truncated = false;         // outer shell terms grow geometrically

  double norm() const;
};

struct HsResult {
  double value = 0.0;
  bool boundary_ok = true;  // input decayed below tolerance at the box faces
};

// Fourier H^s norm on a box, unitary convention
// u_hat(xi) = (2pi)^{-3/2} int u e^{-i x.xi} dx, so s = 0 is the L2 norm.
HsResult hs_norm(const GridFunction& u, double s, double boundary_tol = 1e-8);

// 1D cross-check path for radially symmetric fields:
// u_hat(k) = (2pi)^{-3/2} (4pi/k) int r u(r) sin(kr) dr.
double hs_norm_radial(const RadialGrid& g, const std::vector<double>& values,
                      double s, double k_max, int nk);

// Dyadic-shell weighted norm; scalar box fields, or radial fields of any
// rank (sampled shell-by-shell through the radial interpolant).
NormBreakdown weighted_norm(const GridFunction& u, const WeightedNormSpec& spec,
                            const DyadicPartition& part);

// Integer-order Nirenberg-Walker norm, sum_{|a|<=m} ||(1+|x|)^{d+|a|} d^a u||.
// Rotation-invariant derivative counting (multi-indices weighted by
// multiplicity) so box and radial paths agree.
double weighted_norm_integer(const GridFunction& u, int m, double delta);

double l2_delta_norm(const GridFunction& u, double delta);

// C^m_beta norm for m in {0,1}.
double weighted_sup_norm(const GridFunction& u, double beta, int m);

struct InnerProductResult {
  double value = 0.0;
  bool truncated = false;
};

// Shell inner product with psi_j^2 windows and Lambda^s pairing.
InnerProductResult weighted_inner_product(const GridFunction& u,
                                          const GridFunction& v,
                                          const WeightedNormSpec& spec,
                                          const DyadicPartition& part);

}  // namespace epm
