#pragma once

#include <string>
#include <vector>

#include "epm/grid.hpp"
#include "epm/wsobolev.hpp"

namespace epm {

enum class InequalityKind {
  multiplication,  // ||uv||_{s,d} <= C ||u||_{s1,d1} ||v||_{s2,d2}
  product,         // ||u1..um||_{s,d} <= C prod ||ui||_{s,di}
  power,           // ||w^b||_{s-1,d+2} <= C_n ||w||_{s,d}^b
  power_mass,      // ||w^b||_{s-1,d'} <= C ||w||_{s,d}^b, d' > 3/2
  difference,      // ||w1^b - w2^b||_{L2_{d+2}} <= C_d ||w1 - w2||_{L2_d}
  embedding,       // ||u||_{C^m_b} <= C ||u||_{s,d}
  derivative,      // ||du||_{s-1,d+1} <= ||u||_{s,d}
  moser,           // ||F(u)||_{s,d} <= C ||F||_{C^{N+1}} (1+||u||_inf^N) ||u||
  kateb,           // |||u|^b||_{s,d} <= C(||u||_inf) ||u||_{s,d}
  intermediate,    // ||u||_{s,d} <= ||u||_{0,d}^{1-s/s'} ||u||_{s',d}^{s/s'}
  l1_embedding,    // ||u||_{L1} <= ||(1+|x|)^{-d}||_{L2} ||u||_{L2_d}
  elliptic,        // ||grad phi||_{s-1,d+1} <= C_e ||rho||_{s-2,d+2}
};

InequalityKind kind_from_name(const std::string& name);
std::string kind_name(InequalityKind kind);

struct IneqParams {
  double s = 2.6;
  double delta = -1.2;
  // multiplication factors
  double s1 = 2.6, s2 = 2.6, delta1 = -1.2, delta2 = -1.2;
  // product: per-factor decay weights (size = arity, default 3 copies of delta)
  std::vector<double> product_deltas;
  double beta = 10.0;        // power / power_mass / difference exponent
  double beta_kateb = 2.5;   // fractional power, needs s < beta + 1/2
  double beta_sup = 0.0;     // embedding weight, 0 -> delta + 3/2
  int emb_order = 0;         // embedding m
  double s_prime = 0.0;      // intermediate, 0 -> 2 s
  double delta_l1 = 2.0;     // l1_embedding weight, needs > 3/2
  int j_max = 12;
  int shell_n = 32;
  std::vector<double> dilations = {0.5, 1.0, 2.0};
  std::vector<double> amplitudes = {1.0};
};

struct CaseResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioReport {
  InequalityKind kind;
  std::string params_description;
  std::string corpus_description;
  std::vector<CaseResult> cases;
  double max_ratio = 0.0;
  int skipped = 0;  // cases dropped for divergent (truncation-flagged) norms

  std::string to_csv() const;  // case id, lhs, rhs, ratio
};

// 10 reference profiles: three radial Gaussians, three inverse-power decays,
// two compact bumps, two anisotropic box Gaussians.
std::vector<GridFunction> builtin_corpus();
std::vector<std::string> builtin_corpus_names();

// Validates the hypothesis list of the kind (throwing with the violated
// bound spelled out), evaluates both sides on every applicable corpus case
// and dilation, and reports the ratios.
RatioReport check_inequality(InequalityKind kind,
                             const std::vector<GridFunction>& corpus,
                             const IneqParams& params);

// u(lambda x) resampled on u's own grid
GridFunction dilate(const GridFunction& u, double lambda);

double l1_norm(const GridFunction& u);

}  // namespace epm
