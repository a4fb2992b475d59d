#include "epm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epm/dyadic.hpp"
#include "epm/quadrature.hpp"

namespace epm {

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw std::invalid_argument("scheme: cfl must lie in (0, 1]");
  if (eps_hv < 0.0)
    throw std::invalid_argument("scheme: eps_hv must be >= 0");
  if (t_end < 0.0) throw std::invalid_argument("scheme: t_end must be >= 0");
  if (!(cadence > 0.0))
    throw std::invalid_argument("scheme: cadence must be > 0");
}

double max_characteristic_speed(const FluidState& u, const EosParams& eos) {
  double a = (eos.gamma - 1.0) / 2.0;
  std::size_t np = u.w.npoints();
  double best = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double vv = 0.0;
    for (int c = 0; c < u.v.ncomponents(); ++c) vv += u.v.at(i, c) * u.v.at(i, c);
    best = std::max(best, std::sqrt(vv) + a * std::abs(u.w.samples[i]));
  }
  return best;
}

namespace {

// 4th-difference dissipation -eps c h^3 D4 u per axis; parity ghosts at the
// radial origin, suppressed on the outermost two nodes of each line.
void add_filter_radial(std::vector<double>& dudt, const std::vector<double>& u,
                       double coef, double h, Parity parity) {
  int n = int(u.size());
  double sgn = (parity == Parity::even) ? 1.0 : -1.0;
  auto val = [&](int i) {
    if (i >= 0) return u[std::size_t(i)];
    return sgn * u[std::size_t(-i - 1)];
  };
  double k = coef / h;  // (h^3 / h^4) per stencil
  for (int i = 0; i < n - 2; ++i) {
    double d4 = val(i - 2) - 4.0 * val(i - 1) + 6.0 * val(i) -
                4.0 * val(i + 1) + val(i + 2);
    dudt[std::size_t(i)] -= k * d4;
  }
}

void add_filter_box(GridFunction& dudt, const GridFunction& u, int comp,
                    double coef) {
  const BoxGrid& g = u.box();
  int n = g.n;
  double k = coef / g.h() / 3.0;  // split across the three axes
  int strides[3] = {n * n, n, 1};
  for (int ax = 0; ax < 3; ++ax) {
    int sa = strides[ax];
    int t1 = strides[(ax + 1) % 3], t2 = strides[(ax + 2) % 3];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::size_t base = std::size_t(a) * t1 + std::size_t(b) * t2;
        for (int i = 2; i < n - 2; ++i) {
          std::size_t q = base + std::size_t(i) * sa;
          double d4 = u.at(q - 2 * sa, comp) - 4.0 * u.at(q - sa, comp) +
                      6.0 * u.at(q, comp) - 4.0 * u.at(q + sa, comp) +
                      u.at(q + 2 * sa, comp);
          dudt.at(q, comp) -= k * d4;
        }
      }
  }
}

}  // namespace

FluidState rhs(const FluidState& u, const GridFunction& grad_phi,
               const EosParams& eos, const SchemeConfig& scheme,
               const GridFunction* coef_w, const GridFunction* coef_v) {
  const GridFunction& cw = coef_w ? *coef_w : u.w;
  const GridFunction& cv = coef_v ? *coef_v : u.v;
  if (!same_geometry(u.w.geom, cw.geom) || !same_geometry(u.w.geom, grad_phi.geom))
    throw std::invalid_argument("rhs: mismatched grids");
  double a = (eos.gamma - 1.0) / 2.0;
  FluidState out = zero_state(u.w.geom);
  out.t = u.t;

  double cmax = 0.0;
  {
    FluidState coef;
    coef.w = cw;
    coef.v = cv;
    cmax = max_characteristic_speed(coef, eos);
  }

  if (u.w.on_radial()) {
    const RadialGrid& g = u.w.radial();
    GridFunction dw = derivative(u.w, 0, Parity::even);
    GridFunction dv = derivative(u.v, 0, Parity::odd);
    for (int i = 0; i < g.n; ++i) {
      std::size_t q = std::size_t(i);
      double r = g.node(i);
      double divv = dv.samples[q] + 2.0 * u.v.samples[q] / r;
      out.w.samples[q] = -cv.samples[q] * dw.samples[q] - a * cw.samples[q] * divv;
      out.v.samples[q] = -cv.samples[q] * dv.samples[q] -
                         a * cw.samples[q] * dw.samples[q] - grad_phi.samples[q];
    }
    double coef = scheme.eps_hv * cmax * std::pow(g.h(), 3);
    if (coef > 0.0) {
      add_filter_radial(out.w.samples, u.w.samples, coef, g.h(), Parity::even);
      add_filter_radial(out.v.samples, u.v.samples, coef, g.h(), Parity::odd);
    }
    return out;
  }

  const BoxGrid& g = u.w.box();
  std::size_t np = u.w.npoints();
  GridFunction dw[3] = {derivative(u.w, 0), derivative(u.w, 1),
                        derivative(u.w, 2)};
  GridFunction dv[3][3];
  for (int c = 0; c < 3; ++c) {
    GridFunction comp(g, Rank::scalar);
    for (std::size_t q = 0; q < np; ++q) comp.samples[q] = u.v.at(q, c);
    for (int ax = 0; ax < 3; ++ax) dv[c][ax] = derivative(comp, ax);
  }
  for (std::size_t q = 0; q < np; ++q) {
    double divv = dv[0][0].samples[q] + dv[1][1].samples[q] + dv[2][2].samples[q];
    double adv_w = 0.0;
    for (int ax = 0; ax < 3; ++ax) adv_w += cv.at(q, ax) * dw[ax].samples[q];
    out.w.samples[q] = -adv_w - a * cw.samples[q] * divv;
    for (int c = 0; c < 3; ++c) {
      double adv = 0.0;
      for (int ax = 0; ax < 3; ++ax) adv += cv.at(q, ax) * dv[c][ax].samples[q];
      out.v.at(q, c) =
          -adv - a * cw.samples[q] * dw[c].samples[q] - grad_phi.at(q, c);
    }
  }
  double coef = scheme.eps_hv * cmax * std::pow(g.h(), 3);
  if (coef > 0.0) {
    add_filter_box(out.w, u.w, 0, coef);
    for (int c = 0; c < 3; ++c) add_filter_box(out.v, u.v, c, coef);
  }
  return out;
}

namespace {

GridFunction potential_gradient(const GridFunction& w, const EosParams& eos,
                                const PoissonOptions& opt) {
  GridFunction wc = w;
  for (double& x : wc.samples) x = std::max(x, 0.0);
  GridFunction rho = density_from_makino(wc, eos);
  PotentialField f = wc.on_radial() ? solve_poisson_radial(rho, opt)
                                    : solve_poisson_box(rho, opt);
  return f.grad;
}

FluidState axpy(const FluidState& u, double c, const FluidState& d) {
  FluidState out = u;
  std::size_t nw = u.w.samples.size(), nv = u.v.samples.size();
  for (std::size_t i = 0; i < nw; ++i) out.w.samples[i] += c * d.w.samples[i];
  for (std::size_t i = 0; i < nv; ++i) out.v.samples[i] += c * d.v.samples[i];
  return out;
}

}  // namespace

StepResult step(const FluidState& u, const EosParams& eos,
                const SchemeConfig& scheme, double dt_override) {
  scheme.validate();
  eos.validate();
  double h = u.w.on_radial() ? u.w.radial().h() : u.w.box().h();
  double speed = max_characteristic_speed(u, eos);
  double dt = dt_override > 0.0
                  ? dt_override
                  : (speed > 0.0 ? scheme.cfl * h / speed : scheme.cadence);

  auto eval = [&](const FluidState& s) {
    GridFunction gp = potential_gradient(s.w, eos, scheme.poisson);
    return rhs(s, gp, eos, scheme);
  };
  FluidState k1 = eval(u);
  FluidState k2 = eval(axpy(u, dt / 2.0, k1));
  FluidState k3 = eval(axpy(u, dt / 2.0, k2));
  FluidState k4 = eval(axpy(u, dt, k3));

  StepResult out;
  out.state = u;
  std::size_t nw = u.w.samples.size(), nv = u.v.samples.size();
  for (std::size_t i = 0; i < nw; ++i)
    out.state.w.samples[i] +=
        dt / 6.0 * (k1.w.samples[i] + 2.0 * k2.w.samples[i] +
                    2.0 * k3.w.samples[i] + k4.w.samples[i]);
  for (std::size_t i = 0; i < nv; ++i)
    out.state.v.samples[i] +=
        dt / 6.0 * (k1.v.samples[i] + 2.0 * k2.v.samples[i] +
                    2.0 * k3.v.samples[i] + k4.v.samples[i]);
  out.state.t = u.t + dt;
  out.dt = dt;

  // floor w at 0, tracking the removed mass
  GridFunction clipped = out.state.w;
  bool any = false;
  for (double& x : clipped.samples)
    if (x < 0.0) {
      x = 0.0;
      any = true;
    }
  if (any) {
    GridFunction neg = out.state.w;  // |min(w,0)| converted to a mass gauge
    for (double& x : neg.samples) x = x < 0.0 ? -x : 0.0;
    GridFunction rho_def = density_from_makino(neg, eos);
    out.clip_mass = rho_def.on_radial()
                        ? volume_integral_radial(rho_def.radial(), rho_def.samples)
                        : volume_integral_box(rho_def);
    out.state.w = clipped;
  }
  out.max_speed = max_characteristic_speed(out.state, eos);
  return out;
}

SimulationResult run_simulation(const FluidState& initial, const EosParams& eos,
                                const SchemeConfig& scheme,
                                const MonitorConfig& monitors) {
  scheme.validate();
  SimulationResult res;
  DyadicPartition part(monitors.norms.j_max);

  double speed0 = max_characteristic_speed(initial, eos);
  double total_mass0 = 0.0;

  double clip_acc = 0.0;
  FluidState cur = initial;
  double next_tick = 0.0;

  auto record = [&](const FluidState& s, double clip) {
    DiagnosticRecord r;
    r.t = s.t;
    GridFunction wc = s.w;
    for (double& x : wc.samples) x = std::max(x, 0.0);
    GridFunction rho = density_from_makino(wc, eos);
    r.mass = total_mass(rho, monitors.tail_exponent).value;
    if (total_mass0 == 0.0) total_mass0 = r.mass;
    if (monitors.track_energy) {
      PotentialField f = rho.on_radial()
                             ? solve_poisson_radial(rho, scheme.poisson)
                             : solve_poisson_box(rho, scheme.poisson);
      r.energy = energy_functional(rho, s.v, f.phi, eos, monitors.tail_exponent);
    }
    r.min_w = *std::min_element(s.w.samples.begin(), s.w.samples.end());
    r.max_w = *std::max_element(s.w.samples.begin(), s.w.samples.end());
    if (monitors.track_weighted_norms) {
      r.norm_w_s_delta = weighted_norm(s.w, monitors.norms, part).norm();
      r.norm_v_s_delta = weighted_norm(s.v, monitors.norms, part).norm();
    }
    r.norm_w_l2delta = l2_delta_norm(s.w, monitors.norms.delta);
    if (monitors.reference_w) {
      GridFunction dw = s.w;
      for (std::size_t i = 0; i < dw.samples.size(); ++i)
        dw.samples[i] -= monitors.reference_w->samples[i];
      double drift = l2_delta_norm(dw, monitors.norms.delta);
      if (monitors.reference_v) {
        GridFunction dv = s.v;
        for (std::size_t i = 0; i < dv.samples.size(); ++i)
          dv.samples[i] -= monitors.reference_v->samples[i];
        double dvn = l2_delta_norm(dv, monitors.norms.delta);
        drift = std::sqrt(drift * drift + dvn * dvn);
      }
      r.static_drift_l2delta = drift;
    }
    r.clip_mass = clip;
    res.series.append(r);
  };

  record(cur, 0.0);
  next_tick = scheme.cadence;

  double tick_clip = 0.0;
  while (cur.t < scheme.t_end - 1e-14) {
    double dt_cap = std::min(scheme.t_end, next_tick) - cur.t;
    StepResult sr = step(cur, eos, scheme);
    if (sr.dt > dt_cap) sr = step(cur, eos, scheme, dt_cap);
    cur = sr.state;
    clip_acc += sr.clip_mass;
    tick_clip += sr.clip_mass;
    if (total_mass0 > 0.0)
      res.max_step_clip_fraction =
          std::max(res.max_step_clip_fraction, sr.clip_mass / total_mass0);
    if (speed0 > 0.0 && sr.max_speed > 1e3 * speed0) {
      res.aborted = true;
      res.message = "breakdown guard: characteristic speed exceeded 1e3x initial";
      record(cur, tick_clip);
      break;
    }
    if (cur.t >= next_tick - 1e-12 || cur.t >= scheme.t_end - 1e-14) {
      record(cur, tick_clip);
      tick_clip = 0.0;
      while (next_tick <= cur.t + 1e-12) next_tick += scheme.cadence;
    }
  }
  res.final_state = cur;
  res.cumulative_clip = clip_acc;
  return res;
}

}  // namespace epm
