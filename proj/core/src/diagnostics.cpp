#include "epm/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "epm/quadrature.hpp"

namespace epm {

void TimeSeries::append(const DiagnosticRecord& r) {
  if (!records.empty() && !(r.t > records.back().t))
    throw std::invalid_argument("TimeSeries: t must be strictly increasing");
  records.push_back(r);
}

std::string TimeSeries::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t,mass,energy,min_w,max_w,norm_w_s_delta,norm_v_s_delta,"
        "norm_w_l2delta,static_drift_l2delta,clip_mass\n";
  for (const auto& r : records)
    os << r.t << ',' << r.mass << ',' << r.energy << ',' << r.min_w << ','
       << r.max_w << ',' << r.norm_w_s_delta << ',' << r.norm_v_s_delta << ','
       << r.norm_w_l2delta << ',' << r.static_drift_l2delta << ','
       << r.clip_mass << '\n';
  return os.str();
}

MassResult total_mass(const GridFunction& rho, double tail_exponent) {
  if (rho.rank != Rank::scalar)
    throw std::invalid_argument("total_mass: scalar fields only");
  MassResult out;
  if (rho.on_radial()) {
    const RadialGrid& g = rho.radial();
    if (tail_exponent > 3.0) {
      out.value = volume_integral_radial(g, rho.samples, tail_exponent);
    } else {
      out.value = volume_integral_radial(g, rho.samples);
      if (rho.samples.back() != 0.0) out.flagged = true;
    }
  } else {
    out.value = volume_integral_box(rho);
  }
  return out;
}

double energy_functional(const GridFunction& rho, const GridFunction& v,
                         const GridFunction& phi, const EosParams& eos,
                         double tail_exponent) {
  eos.validate();
  if (!same_geometry(rho.geom, phi.geom))
    throw std::invalid_argument("energy_functional: mismatched grids");
  std::size_t np = rho.npoints();
  GridFunction e = rho;
  for (std::size_t i = 0; i < np; ++i) {
    double r = rho.samples[i];
    double vv = 0.0;
    for (int c = 0; c < v.ncomponents(); ++c) vv += v.at(i, c) * v.at(i, c);
    e.samples[i] = 0.5 * r * vv + eos.K * std::pow(r, eos.gamma) / (eos.gamma - 1.0) +
                   0.5 * r * phi.samples[i];
  }
  if (e.on_radial())
    return volume_integral_radial(e.radial(), e.samples,
                                  tail_exponent > 3.0 ? tail_exponent : 0.0);
  return volume_integral_box(e);
}

double potential_energy_direct(const GridFunction& rho) {
  if (!rho.on_radial() || rho.rank != Rank::scalar)
    throw std::invalid_argument("potential_energy_direct: radial scalar only");
  const RadialGrid& g = rho.radial();
  int n = g.n;
  double h = g.h();
  // shell-shell interaction: -1/max(r, r')
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double ri = g.node(i);
    double qi = 4.0 * M_PI * ri * ri * rho.samples[std::size_t(i)] * h;
    for (int j = 0; j < n; ++j) {
      double rj = g.node(j);
      double qj = 4.0 * M_PI * rj * rj * rho.samples[std::size_t(j)] * h;
      acc += -qi * qj / std::max(ri, rj);
    }
  }
  return 0.5 * acc;
}

GronwallFit gronwall_fit(const std::vector<double>& times,
                         const std::vector<double>& sq_norms,
                         const std::vector<double>& sq_source_integral,
                         double m0_sq) {
  if (times.size() < 10 || times.size() != sq_norms.size() ||
      times.size() != sq_source_integral.size())
    throw std::invalid_argument("gronwall_fit: need >= 10 matched samples");
  GronwallFit fit;
  double peak = 0.0;
  for (double x : sq_norms) peak = std::max(peak, std::abs(x));
  if (peak == 0.0 || m0_sq == 0.0) return fit;  // degenerate, skipped

  double stt = 0.0, sty = 0.0;
  std::vector<double> ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 0.0) continue;
    double base = m0_sq + sq_source_integral[i];
    if (base <= 0.0 || sq_norms[i] <= 0.0) continue;
    double y = std::log(sq_norms[i] / base);
    ys.push_back(y);
    stt += times[i] * times[i];
    sty += times[i] * y;
    fit.c_env = std::max(fit.c_env, y / times[i]);
  }
  if (stt == 0.0) return fit;
  fit.c_ls = sty / stt;
  double res = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < times.size() && k < ys.size(); ++i) {
    if (times[i] <= 0.0) continue;
    double d = ys[k++] - fit.c_ls * times[i];
    res += d * d;
  }
  fit.residual = std::sqrt(res / std::max<std::size_t>(1, ys.size()));
  fit.valid = true;
  return fit;
}

}  // namespace epm
