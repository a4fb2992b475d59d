#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epm/diagnostics.hpp"
#include "epm/fluid.hpp"
#include "epm/poisson.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

struct SchemeConfig {
  double cfl = 0.4;
  double eps_hv = 0.25;   // 4th-difference filter, eps_hv * h^3 per unit speed
  double t_end = 0.5;
  double cadence = 0.05;  // diagnostics interval
  PoissonOptions poisson;

  void validate() const;
};

// d/dt of (w, v) for the quasilinear system with a given potential gradient:
//   w_t = -v.grad w - ((gamma-1)/2) w div v
//   v_t = -(v.grad) v - ((gamma-1)/2) w grad w - grad phi
// Frozen coefficient fields (coef_w, coef_v) default to the state itself;
// passing another pair yields the linear system used by the fixed-point map.
FluidState rhs(const FluidState& u, const GridFunction& grad_phi,
               const EosParams& eos, const SchemeConfig& scheme,
               const GridFunction* coef_w = nullptr,
               const GridFunction* coef_v = nullptr);

double max_characteristic_speed(const FluidState& u, const EosParams& eos);

struct StepResult {
  FluidState state;
  double dt = 0.0;
  double clip_mass = 0.0;      // mass removed flooring w to 0 after the step
  double max_speed = 0.0;
};

// One RK4 step; every stage re-solves the potential from its own w.
StepResult step(const FluidState& u, const EosParams& eos,
                const SchemeConfig& scheme, double dt_override = 0.0);

struct MonitorConfig {
  WeightedNormSpec norms;
  std::optional<GridFunction> reference_w;  // static-drift reference
  std::optional<GridFunction> reference_v;
  double tail_exponent = 5.0;
  bool track_energy = true;
  bool track_weighted_norms = true;
};

struct SimulationResult {
  TimeSeries series;
  FluidState final_state;
  bool aborted = false;        // breakdown guard tripped
  std::string message;
  double cumulative_clip = 0.0;
  double max_step_clip_fraction = 0.0;  // clip mass / total mass, worst step
};

SimulationResult run_simulation(const FluidState& initial,
                                const EosParams& eos,
                                const SchemeConfig& scheme,
                                const MonitorConfig& monitors);

}  // namespace epm
