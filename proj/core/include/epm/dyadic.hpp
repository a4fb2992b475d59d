#pragma once

#include <vector>

namespace epm {

// Dyadic shell partition built from dilations of one C^inf radial cutoff
// chi (exp(-1/t) mollifier ramp): chi = 1 for r <= 1, 0 for r >= 2.
// Shell j >= 1 is chi(r/2^j) - chi(r/2^{j-2}); shell 0 is chi(r).
// Supports: shell 0 in {r <= 2}; shell j in {2^{j-2} <= r <= 2^{j+1}},
// identically 1 on {2^{j-1} <= r <= 2^j}, with |d^a psi_j| <= C_a 2^{-|a|j}.
class DyadicPartition {
 public:
  explicit DyadicPartition(int j_max);

  int j_max() const { return j_max_; }
  // psi_j evaluated at radius r
  double shell(int j, double r) const;
  // psi_j(2^j x) for |x| <= 2: the rescaled window used by the shell norms
  double shell_rescaled(int j, double r_scaled) const;

  // smooth cutoff: 1 for r <= 1, 0 for r >= 2
  static double cutoff(double r);

 private:
  int j_max_;
};

}  // namespace epm
