#include "epm/ineq_lab.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "epm/interp.hpp"
#include "epm/poisson.hpp"
#include "epm/quadrature.hpp"

namespace epm {

namespace {

const std::map<std::string, InequalityKind>& kind_table() {
  static const std::map<std::string, InequalityKind> table = {
      {"multiplication", InequalityKind::multiplication},
      {"product", InequalityKind::product},
      {"power", InequalityKind::power},
      {"power-mass", InequalityKind::power_mass},
      {"difference", InequalityKind::difference},
      {"embedding", InequalityKind::embedding},
      {"derivative", InequalityKind::derivative},
      {"moser", InequalityKind::moser},
      {"kateb", InequalityKind::kateb},
      {"intermediate", InequalityKind::intermediate},
      {"l1-embedding", InequalityKind::l1_embedding},
      {"elliptic", InequalityKind::elliptic},
  };
  return table;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

GridFunction map_samples(const GridFunction& u,
                         const std::function<double(double)>& f) {
  GridFunction out = u;
  for (double& x : out.samples) x = f(x);
  return out;
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  if (!same_geometry(a.geom, b.geom))
    throw std::invalid_argument("pointwise product: mismatched grids");
  GridFunction out = a;
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] *= b.samples[i];
  return out;
}

GridFunction gradient_field(const GridFunction& u) {
  if (u.on_radial()) return derivative(u, 0, Parity::even);
  GridFunction out(u.geom, Rank::vector3);
  std::size_t np = u.npoints();
  for (int ax = 0; ax < 3; ++ax) {
    GridFunction d = derivative(u, ax);
    for (std::size_t q = 0; q < np; ++q) out.at(q, ax) = d.samples[q];
  }
  return out;
}

struct NormEngine {
  IneqParams p;
  DyadicPartition part;

  explicit NormEngine(const IneqParams& params)
      : p(params), part(params.j_max) {}

  // weighted norm at (s, delta); sets *diverged when the tail still grows
  double norm(const GridFunction& u, double s, double delta,
              bool* diverged) const {
    WeightedNormSpec spec;
    spec.s = s;
    spec.delta = delta;
    spec.j_max = p.j_max;
    spec.shell_n = p.shell_n;
    NormBreakdown nb = weighted_norm(u, spec, part);
    if (nb.truncated && diverged) *diverged = true;
    return nb.norm();
  }
};

}  // namespace

InequalityKind kind_from_name(const std::string& name) {
  auto it = kind_table().find(name);
  if (it == kind_table().end())
    throw std::invalid_argument("unknown inequality kind: " + name);
  return it->second;
}

std::string kind_name(InequalityKind kind) {
  for (const auto& [name, k] : kind_table())
    if (k == kind) return name;
  return "?";
}

std::string RatioReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "case,lhs,rhs,ratio\n";
  for (const auto& c : cases)
    os << c.name << ',' << c.lhs << ',' << c.rhs << ',' << c.ratio << '\n';
  return os.str();
}

GridFunction dilate(const GridFunction& u, double lambda) {
  if (u.rank != Rank::scalar)
    throw std::invalid_argument("dilate: scalar fields only");
  if (u.on_radial()) {
    const RadialGrid& g = u.radial();
    RadialInterpolant it(g, u.samples);
    GridFunction out = u;
    for (int i = 0; i < g.n; ++i)
      out.samples[std::size_t(i)] = it(lambda * g.node(i));
    return out;
  }
  const BoxGrid& g = u.box();
  BoxInterpolant it(u);
  GridFunction out = u;
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k, ++idx)
        out.samples[idx] =
            it(lambda * g.node(i), lambda * g.node(j), lambda * g.node(k));
  return out;
}

double l1_norm(const GridFunction& u) {
  GridFunction a = u;
  for (double& x : a.samples) x = std::abs(x);
  if (a.on_radial()) return volume_integral_radial(a.radial(), a.samples);
  return volume_integral_box(a);
}

std::vector<std::string> builtin_corpus_names() {
  return {"gauss_0.5",  "gauss_1",     "gauss_2",   "invpow_0.75",
          "invpow_1.5", "invpow_2.5",  "bump_2",    "bump_4",
          "anis_gauss_a", "anis_gauss_b"};
}

std::vector<GridFunction> builtin_corpus() {
  RadialGrid rg(64.0, 1024);
  BoxGrid bg(8.0, 32);
  std::vector<GridFunction> out;
  for (double sigma : {0.5, 1.0, 2.0})
    out.push_back(sample_analytic(
        [sigma](double r) { return std::exp(-r * r / (2.0 * sigma * sigma)); },
        rg));
  for (double pexp : {0.75, 1.5, 2.5})
    out.push_back(sample_analytic(
        [pexp](double r) { return std::pow(1.0 + r * r, -pexp); }, rg));
  for (double R : {2.0, 4.0})
    out.push_back(sample_analytic(
        [R](double r) {
          double t = r / R;
          if (t >= 1.0) return 0.0;
          return std::exp(-1.0 / (1.0 - t * t)) * std::exp(1.0);
        },
        rg));
  out.push_back(sample_analytic(
      [](double x, double y, double z) {
        return std::exp(-(x * x / 2.0 + y * y / 8.0 + z * z / 1.0));
      },
      bg));
  out.push_back(sample_analytic(
      [](double x, double y, double z) {
        double dx = x - 1.0, dy = y + 0.5;
        return std::exp(-(dx * dx + 2.0 * dy * dy + z * z) / 2.0);
      },
      bg));
  return out;
}

namespace {

std::string case_id(const std::vector<std::string>& names, std::size_t i,
                    double lambda) {
  std::string base =
      i < names.size() ? names[i] : ("field_" + std::to_string(i));
  if (lambda != 1.0) base += "@l=" + num(lambda);
  return base;
}

void validate_hypotheses(InequalityKind kind, const IneqParams& p) {
  double s = p.s, d = p.delta;
  switch (kind) {
    case InequalityKind::multiplication:
      require(s <= std::min(p.s1, p.s2),
              "multiplication: requires s <= min(s1, s2); s=" + num(s));
      require(s + 1.5 < p.s1 + p.s2,
              "multiplication: requires s + 3/2 < s1 + s2; s+3/2=" +
                  num(s + 1.5) + ", s1+s2=" + num(p.s1 + p.s2));
      require(0.0 <= p.s1 + p.s2,
              "multiplication: requires 0 <= s1 + s2");
      require(d - 1.5 <= p.delta1 + p.delta2,
              "multiplication: requires delta - 3/2 <= delta1 + delta2; "
              "delta-3/2=" + num(d - 1.5) +
                  ", delta1+delta2=" + num(p.delta1 + p.delta2));
      break;
    case InequalityKind::product: {
      require(s > 1.5, "product: requires s > 3/2; s=" + num(s));
      double sum = 0.0;
      for (double x : p.product_deltas) sum += x;
      double m = double(p.product_deltas.size());
      require(m >= 2, "product: requires at least 2 factors");
      require(d <= sum + 1.5 * (m - 1.0),
              "product: requires delta <= sum(delta_i) + 3(m-1)/2; delta=" +
                  num(d) + ", bound=" + num(sum + 1.5 * (m - 1.0)));
      break;
    }
    case InequalityKind::power:
    case InequalityKind::difference: {
      require(p.beta >= 2.0, "power: requires beta >= 2; beta=" + num(p.beta));
      require(p.beta == std::floor(p.beta),
              "power: integer-exponent form requires integer beta; beta=" +
                  num(p.beta));
      require(s > 1.5, "power: requires s > 3/2; s=" + num(s));
      double bound = 2.0 / (p.beta - 1.0) - 1.5;
      require(d >= bound,
              "power: requires delta >= 2/(beta-1) - 3/2; delta=" + num(d) +
                  ", bound=" + num(bound));
      break;
    }
    case InequalityKind::power_mass: {
      require(p.beta >= 2.0,
              "power-mass: requires beta >= 2; beta=" + num(p.beta));
      double frac = p.beta - std::floor(p.beta);
      if (frac == 0.0)
        require(s > 2.5, "power-mass: requires s > 5/2; s=" + num(s));
      else
        require(s > 2.5 && s < 2.5 + frac,
                "power-mass: requires 5/2 < s < 5/2 + (beta - [beta]); s=" +
                    num(s));
      double nb = std::floor(p.beta);
      double bound = 3.0 / nb - 1.5;
      require(d >= bound,
              "power-mass: requires delta >= 3/[beta] - 3/2; delta=" + num(d) +
                  ", bound=" + num(bound));
      double dprime = nb * d + (nb - 1.0) * 1.5;
      require(dprime >= 1.5,
              "power-mass: target weight [beta] delta + ([beta]-1) 3/2 must "
              "be >= 3/2; got " + num(dprime));
      break;
    }
    case InequalityKind::embedding: {
      double b = p.beta_sup == 0.0 ? d + 1.5 : p.beta_sup;
      require(s > 1.5 + p.emb_order,
              "embedding: requires s > 3/2 + m; s=" + num(s) +
                  ", m=" + std::to_string(p.emb_order));
      require(b <= d + 1.5,
              "embedding: requires beta <= delta + 3/2; beta=" + num(b) +
                  ", delta+3/2=" + num(d + 1.5));
      break;
    }
    case InequalityKind::derivative:
      require(s >= 1.0, "derivative: requires s >= 1; s=" + num(s));
      break;
    case InequalityKind::moser:
      require(s > 1.5,
              "moser: requires s > 3/2 for a universal constant; s=" + num(s));
      break;
    case InequalityKind::kateb:
      require(p.beta_kateb > 1.0,
              "kateb: requires beta > 1; beta=" + num(p.beta_kateb));
      require(s > 0.0 && s < p.beta_kateb + 0.5,
              "kateb: requires 0 < s < beta + 1/2; s=" + num(s) +
                  ", beta+1/2=" + num(p.beta_kateb + 0.5));
      break;
    case InequalityKind::intermediate: {
      double sp = p.s_prime == 0.0 ? 2.0 * s : p.s_prime;
      require(s > 0.0 && s < sp,
              "intermediate: requires 0 < s < s'; s=" + num(s) +
                  ", s'=" + num(sp));
      break;
    }
    case InequalityKind::l1_embedding:
      require(p.delta_l1 > 1.5,
              "l1-embedding: requires delta > 3/2; delta=" + num(p.delta_l1));
      break;
    case InequalityKind::elliptic:
      require(d > -1.5 && d < -0.5,
              "elliptic: requires delta in (-3/2, -1/2); delta=" + num(d));
      require(s >= 2.0,
              "elliptic: requires s >= 2 (source norm order s - 2); s=" +
                  num(s));
      break;
  }
}

double weight_l2_constant(double delta) {
  // ||(1+|x|)^{-delta}||_{L2}^2 = 4 pi int_0^inf r^2 (1+r)^{-2 delta} dr,
  // r = t/(1-t)
  double val = integrate_1d(
      [delta](double t) {
        return t * t * std::pow(1.0 - t, 2.0 * delta - 4.0);
      },
      0.0, 1.0 - 1e-12, 1e-11);
  return std::sqrt(4.0 * M_PI * val);
}

}  // namespace

RatioReport check_inequality(InequalityKind kind,
                             const std::vector<GridFunction>& corpus,
                             const IneqParams& params) {
  IneqParams p = params;
  if (p.product_deltas.empty())
    p.product_deltas = {p.delta, p.delta, p.delta};
  validate_hypotheses(kind, p);

  NormEngine eng(p);
  RatioReport rep;
  rep.kind = kind;
  {
    std::ostringstream os;
    os << "s=" << p.s << " delta=" << p.delta;
    rep.params_description = os.str();
  }
  rep.corpus_description =
      std::to_string(corpus.size()) + " fields, dilations " +
      std::to_string(p.dilations.size());
  auto names = builtin_corpus_names();

  auto add_case = [&](const std::string& name, double lhs, double rhs,
                      bool diverged) {
    if (diverged || !(rhs > 0.0)) {
      ++rep.skipped;
      return;
    }
    CaseResult c{name, lhs, rhs, lhs / rhs};
    rep.max_ratio = std::max(rep.max_ratio, c.ratio);
    rep.cases.push_back(std::move(c));
  };

  auto nonneg = [](const GridFunction& u) {
    GridFunction out = u;
    for (double& x : out.samples) x = std::abs(x);
    return out;
  };

  // single-function kinds iterate corpus x dilations
  auto for_each_case =
      [&](const std::function<void(const GridFunction&, const std::string&)>&
              fn) {
        for (std::size_t i = 0; i < corpus.size(); ++i)
          for (double lam : p.dilations) {
            GridFunction u =
                lam == 1.0 ? corpus[i] : dilate(corpus[i], lam);
            fn(u, case_id(names, i, lam));
          }
      };

  switch (kind) {
    case InequalityKind::multiplication: {
      for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
        if (!same_geometry(corpus[i].geom, corpus[i + 1].geom)) continue;
        for (double lam : p.dilations) {
          GridFunction u = lam == 1.0 ? corpus[i] : dilate(corpus[i], lam);
          GridFunction v =
              lam == 1.0 ? corpus[i + 1] : dilate(corpus[i + 1], lam);
          bool div = false;
          double lhs = eng.norm(pointwise_product(u, v), p.s, p.delta, &div);
          double rhs = eng.norm(u, p.s1, p.delta1, &div) *
                       eng.norm(v, p.s2, p.delta2, &div);
          add_case(case_id(names, i, lam) + "*" + case_id(names, i + 1, lam),
                   lhs, rhs, div);
        }
      }
      break;
    }
    case InequalityKind::product: {
      std::size_t m = p.product_deltas.size();
      for (std::size_t i = 0; i + m - 1 < corpus.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 1; k < m; ++k)
          if (!same_geometry(corpus[i].geom, corpus[i + k].geom)) ok = false;
        if (!ok) continue;
        for (double lam : p.dilations) {
          bool div = false;
          GridFunction prod =
              lam == 1.0 ? corpus[i] : dilate(corpus[i], lam);
          double rhs = eng.norm(prod, p.s, p.product_deltas[0], &div);
          for (std::size_t k = 1; k < m; ++k) {
            GridFunction uk =
                lam == 1.0 ? corpus[i + k] : dilate(corpus[i + k], lam);
            rhs *= eng.norm(uk, p.s, p.product_deltas[k], &div);
            prod = pointwise_product(prod, uk);
          }
          double lhs = eng.norm(prod, p.s, p.delta, &div);
          add_case(case_id(names, i, lam) + "x" + std::to_string(m), lhs, rhs,
                   div);
        }
      }
      break;
    }
    case InequalityKind::power: {
      double b = p.beta;
      for_each_case([&](const GridFunction& u0, const std::string& id) {
        GridFunction u = nonneg(u0);
        bool div = false;
        GridFunction ub = map_samples(u, [b](double x) { return std::pow(x, b); });
        double lhs = eng.norm(ub, p.s - 1.0, p.delta + 2.0, &div);
        double rhs = std::pow(eng.norm(u, p.s, p.delta, &div), b);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::power_mass: {
      double b = p.beta;
      double nb = std::floor(b);
      double dprime = nb * p.delta + (nb - 1.0) * 1.5;
      for_each_case([&](const GridFunction& u0, const std::string& id) {
        GridFunction u = nonneg(u0);
        bool div = false;
        GridFunction ub = map_samples(u, [b](double x) { return std::pow(x, b); });
        double lhs = eng.norm(ub, p.s - 1.0, dprime, &div);
        double rhs = std::pow(eng.norm(u, p.s, p.delta, &div), nb);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::difference: {
      double b = p.beta;
      for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
        if (!same_geometry(corpus[i].geom, corpus[i + 1].geom)) continue;
        for (double amp : p.amplitudes) {
          GridFunction w1 = nonneg(corpus[i]);
          GridFunction w2 = nonneg(corpus[i + 1]);
          for (double& x : w1.samples) x *= amp;
          for (double& x : w2.samples) x *= amp;
          bool div = false;
          GridFunction db = w1;
          for (std::size_t q = 0; q < db.samples.size(); ++q)
            db.samples[q] = std::pow(w1.samples[q], b) -
                            std::pow(w2.samples[q], b);
          double lhs = l2_delta_norm(db, p.delta + 2.0);
          GridFunction dw = w1;
          for (std::size_t q = 0; q < dw.samples.size(); ++q)
            dw.samples[q] -= w2.samples[q];
          double gap = l2_delta_norm(dw, p.delta);
          double n1 = eng.norm(w1, p.s, p.delta, &div);
          double n2 = eng.norm(w2, p.s, p.delta, &div);
          double envelope =
              b / std::sqrt(2.0) *
              std::sqrt(std::pow(n1, 2.0 * (b - 1.0)) +
                        std::pow(n2, 2.0 * (b - 1.0)));
          add_case(case_id(names, i, 1.0) + "-" + case_id(names, i + 1, 1.0) +
                       "@a=" + num(amp),
                   lhs, envelope * gap, div);
        }
      }
      break;
    }
    case InequalityKind::embedding: {
      double b = p.beta_sup == 0.0 ? p.delta + 1.5 : p.beta_sup;
      for_each_case([&](const GridFunction& u, const std::string& id) {
        bool div = false;
        double lhs = weighted_sup_norm(u, b, p.emb_order);
        double rhs = eng.norm(u, p.s, p.delta, &div);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::derivative: {
      for_each_case([&](const GridFunction& u, const std::string& id) {
        bool div = false;
        double lhs = eng.norm(gradient_field(u), p.s - 1.0, p.delta + 1.0, &div);
        double rhs = eng.norm(u, p.s, p.delta, &div);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::moser: {
      int N = int(std::floor(p.s)) + 1;
      struct Comp {
        const char* name;
        std::function<double(double)> f;
        double c_bound;  // sup over the corpus range of |F^(k)|, k <= N+1
      };
      std::vector<Comp> comps = {
          {"u/(1+u^2)", [](double x) { return x / (1.0 + x * x); }, 6.0},
          {"sin", [](double x) { return std::sin(x); }, 1.0}};
      for_each_case([&](const GridFunction& u, const std::string& id) {
        double uinf = max_abs(u);
        for (const auto& comp : comps) {
          bool div = false;
          double lhs = eng.norm(map_samples(u, comp.f), p.s, p.delta, &div);
          double rhs = comp.c_bound * (1.0 + std::pow(uinf, N)) *
                       eng.norm(u, p.s, p.delta, &div);
          add_case(id + ":" + comp.name, lhs, rhs, div);
        }
      });
      break;
    }
    case InequalityKind::kateb: {
      double b = p.beta_kateb;
      for_each_case([&](const GridFunction& u, const std::string& id) {
        bool div = false;
        GridFunction ub =
            map_samples(u, [b](double x) { return std::pow(std::abs(x), b); });
        double lhs = eng.norm(ub, p.s, p.delta, &div);
        double rhs = eng.norm(u, p.s, p.delta, &div);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::intermediate: {
      double sp = p.s_prime == 0.0 ? 2.0 * p.s : p.s_prime;
      for_each_case([&](const GridFunction& u, const std::string& id) {
        bool div = false;
        double lhs = eng.norm(u, p.s, p.delta, &div);
        double n0 = eng.norm(u, 0.0, p.delta, &div);
        double n1 = eng.norm(u, sp, p.delta, &div);
        double theta = p.s / sp;
        double rhs = std::pow(n0, 1.0 - theta) * std::pow(n1, theta);
        add_case(id, lhs, rhs, div);
      });
      break;
    }
    case InequalityKind::l1_embedding: {
      double c = weight_l2_constant(p.delta_l1);
      for_each_case([&](const GridFunction& u, const std::string& id) {
        double lhs = l1_norm(u);
        double rhs = c * l2_delta_norm(u, p.delta_l1);
        add_case(id, lhs, rhs, false);
      });
      break;
    }
    case InequalityKind::elliptic: {
      WeightedNormSpec spec;
      spec.s = p.s;
      spec.delta = p.delta;
      spec.j_max = p.j_max;
      spec.shell_n = p.shell_n;
      for_each_case([&](const GridFunction& u0, const std::string& id) {
        GridFunction rho = nonneg(u0);
        PotentialField f = rho.on_radial() ? solve_poisson_radial(rho)
                                           : solve_poisson_box(rho);
        double ratio = elliptic_estimate_report(rho, f, spec, eng.part);
        add_case(id, ratio, 1.0, false);
      });
      break;
    }
  }
  return rep;
}

}  // namespace epm
