#pragma once

#include <vector>

#include "epm/evolution.hpp"
#include "epm/fluid.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

// Time-indexed state on [0, T], uniformly spaced slices, linear in t between
// slices.
struct Trajectory {
  std::vector<FluidState> slices;
  double T = 0.0;

  double dt() const { return T / double(slices.size() - 1); }
  FluidState at(double t) const;

  static Trajectory constant(const FluidState& s, double T, int n_slices);
};

struct PicardConfig {
  double M0 = 0.0;   // 0: use the computed initial-data norm
  double T = 0.05;
  double tol = 1e-8;
  int max_iter = 20;
  int max_halvings = 6;
  WeightedNormSpec norms;
  SchemeConfig scheme;

  void validate() const;
};

struct PicardMapResult {
  Trajectory traj;
  double sup_high = 0.0;   // sup-in-t weighted norm of (w, v)
  bool escaped = false;    // left the ball of radius 2 M0
};

// One application of the fixed-point map: recover the density of each input
// slice, solve for its potential gradient, then integrate the linear system
// with coefficients frozen from the input trajectory.
PicardMapResult picard_map(const Trajectory& in, const FluidState& initial,
                           const EosParams& eos, const PicardConfig& cfg,
                           double m0);

struct PicardTrace {
  std::vector<double> high_norms;  // sup-in-t high norm per iterate
  std::vector<double> gaps;        // successive sup-in-t L2_delta gaps
  double lambda = 0.0;             // fitted geometric decay of the gaps
  int halvings = 0;
  double T_used = 0.0;
  double m0 = 0.0;
  bool converged = false;
};

struct PicardResult {
  Trajectory traj;
  PicardTrace trace;
};

PicardResult picard_solve(const FluidState& initial, const EosParams& eos,
                          PicardConfig cfg);

}  // namespace epm
