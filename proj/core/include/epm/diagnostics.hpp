#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epm/fluid.hpp"
#include "epm/grid.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

struct DiagnosticRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double min_w = 0.0;
  double max_w = 0.0;
  double norm_w_s_delta = 0.0;
  double norm_v_s_delta = 0.0;
  double norm_w_l2delta = 0.0;
  double static_drift_l2delta = 0.0;  // 0 when no reference profile is set
  double clip_mass = 0.0;             // mass removed by flooring w this tick
};

struct TimeSeries {
  std::vector<DiagnosticRecord> records;

  void append(const DiagnosticRecord& r);  // enforces increasing t
  // CSV with a mandatory header, floats at 17 significant digits
  std::string to_csv() const;
};

struct MassResult {
  double value = 0.0;
  bool flagged = false;  // tail not integrable
};

// int rho dx: 4 pi int r^2 rho dr on radial grids plus a power-law tail
// term rho ~ (r/r_max)^{-p}; plain cell sum on boxes.
MassResult total_mass(const GridFunction& rho, double tail_exponent = 5.0);

// E = int (1/2 rho |v|^2 + K rho^gamma / (gamma-1)) dx + 1/2 int rho phi dx,
// phi the zero-at-infinity potential of rho.
double energy_functional(const GridFunction& rho, const GridFunction& v,
                         const GridFunction& phi, const EosParams& eos,
                         double tail_exponent = 5.0);

// O(n^2) radial oracle for the potential term:
// -1/2 int int rho(x) rho(y) / |x-y| dx dy via the shell Green function.
double potential_energy_direct(const GridFunction& rho);

struct GronwallFit {
  double c_ls = 0.0;       // least-squares slope of log(N^2/(M0^2+S)) vs t
  double c_env = 0.0;      // smallest constant making the bound hold everywhere
  double residual = 0.0;
  bool valid = false;      // false for degenerate (zero) series
};

// Fit of ||U(t)||^2 <= e^{Ct}(M0^2 + S(t)), S the cumulative squared source.
GronwallFit gronwall_fit(const std::vector<double>& times,
                         const std::vector<double>& sq_norms,
                         const std::vector<double>& sq_source_integral,
                         double m0_sq);

}  // namespace epm
