#include "epm/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epm/poisson.hpp"

namespace epm {

FluidState Trajectory::at(double t) const {
  if (slices.empty()) throw std::logic_error("Trajectory: empty");
  if (slices.size() == 1) return slices.front();
  double step = dt();
  double pos = std::clamp(t / step, 0.0, double(slices.size() - 1));
  std::size_t i = std::min(std::size_t(pos), slices.size() - 2);
  double a = pos - double(i);
  FluidState out = slices[i];
  const FluidState& nxt = slices[i + 1];
  for (std::size_t q = 0; q < out.w.samples.size(); ++q)
    out.w.samples[q] += a * (nxt.w.samples[q] - out.w.samples[q]);
  for (std::size_t q = 0; q < out.v.samples.size(); ++q)
    out.v.samples[q] += a * (nxt.v.samples[q] - out.v.samples[q]);
  out.t = t;
  return out;
}

Trajectory Trajectory::constant(const FluidState& s, double T, int n_slices) {
  Trajectory tr;
  tr.T = T;
  tr.slices.assign(std::size_t(n_slices), s);
  for (int i = 0; i < n_slices; ++i)
    tr.slices[std::size_t(i)].t = T * i / double(n_slices - 1);
  return tr;
}

void PicardConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("picard: T must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("picard: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("picard: max_iter >= 1");
  scheme.validate();
  norms.validate();
}

namespace {

double combined_weighted_norm(const FluidState& s, const WeightedNormSpec& spec,
                              const DyadicPartition& part) {
  double a = weighted_norm(s.w, spec, part).total;
  double b = weighted_norm(s.v, spec, part).total;
  return std::sqrt(a + b);
}

double combined_l2_delta(const FluidState& a, const FluidState& b,
                         double delta) {
  GridFunction dw = a.w, dv = a.v;
  for (std::size_t q = 0; q < dw.samples.size(); ++q)
    dw.samples[q] -= b.w.samples[q];
  for (std::size_t q = 0; q < dv.samples.size(); ++q)
    dv.samples[q] -= b.v.samples[q];
  double x = l2_delta_norm(dw, delta);
  double y = l2_delta_norm(dv, delta);
  return std::sqrt(x * x + y * y);
}

}  // namespace

PicardMapResult picard_map(const Trajectory& in, const FluidState& initial,
                           const EosParams& eos, const PicardConfig& cfg,
                           double m0) {
  eos.validate();
  if (in.slices.size() < 2)
    throw std::invalid_argument("picard_map: need >= 2 input slices");
  std::size_t ns = in.slices.size();
  double dt = in.dt();

  // potential gradient per input slice
  std::vector<GridFunction> grads;
  grads.reserve(ns);
  for (const auto& s : in.slices) {
    GridFunction wc = s.w;
    for (double& x : wc.samples) x = std::max(x, 0.0);
    GridFunction rho = density_from_makino(wc, eos);
    PotentialField f = rho.on_radial()
                           ? solve_poisson_radial(rho, cfg.scheme.poisson)
                           : solve_poisson_box(rho, cfg.scheme.poisson);
    grads.push_back(std::move(f.grad));
  }
  auto grad_at = [&](double t) {
    double pos = std::clamp(t / dt, 0.0, double(ns - 1));
    std::size_t i = std::min(std::size_t(pos), ns - 2);
    double a = pos - double(i);
    GridFunction g = grads[i];
    for (std::size_t q = 0; q < g.samples.size(); ++q)
      g.samples[q] += a * (grads[i + 1].samples[q] - g.samples[q]);
    return g;
  };

  PicardMapResult out;
  out.traj.T = in.T;
  out.traj.slices.reserve(ns);
  FluidState cur = initial;
  cur.t = 0.0;
  out.traj.slices.push_back(cur);

  auto linear_rhs = [&](const FluidState& s, double t) {
    FluidState coef = in.at(t);
    GridFunction gp = grad_at(t);
    return rhs(s, gp, eos, cfg.scheme, &coef.w, &coef.v);
  };
  auto axpy = [](const FluidState& u, double c, const FluidState& d) {
    FluidState r = u;
    for (std::size_t q = 0; q < r.w.samples.size(); ++q)
      r.w.samples[q] += c * d.w.samples[q];
    for (std::size_t q = 0; q < r.v.samples.size(); ++q)
      r.v.samples[q] += c * d.v.samples[q];
    return r;
  };

  for (std::size_t k = 1; k < ns; ++k) {
    double t0 = double(k - 1) * dt;
    FluidState k1 = linear_rhs(cur, t0);
    FluidState k2 = linear_rhs(axpy(cur, dt / 2.0, k1), t0 + dt / 2.0);
    FluidState k3 = linear_rhs(axpy(cur, dt / 2.0, k2), t0 + dt / 2.0);
    FluidState k4 = linear_rhs(axpy(cur, dt, k3), t0 + dt);
    for (std::size_t q = 0; q < cur.w.samples.size(); ++q)
      cur.w.samples[q] += dt / 6.0 *
                          (k1.w.samples[q] + 2.0 * k2.w.samples[q] +
                           2.0 * k3.w.samples[q] + k4.w.samples[q]);
    for (std::size_t q = 0; q < cur.v.samples.size(); ++q)
      cur.v.samples[q] += dt / 6.0 *
                          (k1.v.samples[q] + 2.0 * k2.v.samples[q] +
                           2.0 * k3.v.samples[q] + k4.v.samples[q]);
    cur.t = double(k) * dt;
    out.traj.slices.push_back(cur);
  }

  DyadicPartition part(cfg.norms.j_max);
  for (const auto& s : out.traj.slices)
    out.sup_high = std::max(out.sup_high,
                            combined_weighted_norm(s, cfg.norms, part));
  if (m0 > 0.0 && out.sup_high > 2.0 * m0) out.escaped = true;
  return out;
}

PicardResult picard_solve(const FluidState& initial, const EosParams& eos,
                          PicardConfig cfg) {
  cfg.validate();
  DyadicPartition part(cfg.norms.j_max);
  double m0 = cfg.M0 > 0.0
                  ? cfg.M0
                  : combined_weighted_norm(initial, cfg.norms, part);

  double h = initial.w.on_radial() ? initial.w.radial().h()
                                   : initial.w.box().h();
  double speed0 = max_characteristic_speed(initial, eos);

  PicardResult res;
  double T = cfg.T;
  for (int attempt = 0; attempt <= cfg.max_halvings; ++attempt) {
    int nt = 8;
    if (speed0 > 0.0)
      nt = std::max(8, int(std::ceil(1.5 * T * speed0 / (cfg.scheme.cfl * h))));
    Trajectory iterate = Trajectory::constant(initial, T, nt + 1);

    PicardTrace trace;
    trace.T_used = T;
    trace.halvings = attempt;
    trace.m0 = m0;
    bool failed = false;
    Trajectory prev = iterate;
    for (int it = 0; it < cfg.max_iter; ++it) {
      PicardMapResult mr = picard_map(iterate, initial, eos, cfg, m0);
      trace.high_norms.push_back(mr.sup_high);
      if (mr.escaped && m0 > 0.0) {
        failed = true;
        break;
      }
      double gap = 0.0;
      for (std::size_t k = 0; k < mr.traj.slices.size(); ++k)
        gap = std::max(gap, combined_l2_delta(mr.traj.slices[k],
                                              iterate.slices[k],
                                              cfg.norms.delta));
      trace.gaps.push_back(gap);
      prev = iterate;
      iterate = mr.traj;
      if (gap < cfg.tol) {
        trace.converged = true;
        break;
      }
      // non-contraction: gaps growing over the last two iterations
      std::size_t ng = trace.gaps.size();
      if (ng >= 3 && trace.gaps[ng - 1] > trace.gaps[ng - 2] &&
          trace.gaps[ng - 2] > trace.gaps[ng - 3]) {
        failed = true;
        break;
      }
    }
    // fitted geometric factor: least squares of log(gap) against iteration
    {
      std::vector<double> lg;
      for (double g : trace.gaps)
        if (g > 0.0) lg.push_back(std::log(g));
      if (lg.size() >= 2) {
        double n = double(lg.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lg.size(); ++i) {
          sx += double(i);
          sy += lg[i];
          sxx += double(i) * i;
          sxy += double(i) * lg[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        trace.lambda = std::exp(slope);
      }
    }
    res.trace = trace;
    res.traj = iterate;
    if (!failed && trace.converged) return res;
    if (!failed && !trace.converged && trace.lambda < 1.0) return res;
    T /= 2.0;
  }
  return res;  // trace.converged == false: no contraction found
}

}  // namespace epm
