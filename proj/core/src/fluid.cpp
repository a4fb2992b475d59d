#include "epm/fluid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epm {

void EosParams::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("eos: K must be positive");
  if (!(gamma > 1.0 && gamma < 5.0 / 3.0))
    throw std::invalid_argument(
        "eos: gamma must lie in (1, 5/3), got " + std::to_string(gamma));
}

double EosParams::makino_coeff() const {
  return 2.0 * std::sqrt(K * gamma) / (gamma - 1.0);
}

double EosParams::density_coeff() const {
  return std::pow(makino_coeff(), -beta());
}

FluidState zero_state(const Geometry& geom) {
  FluidState s;
  s.w = GridFunction(geom, Rank::scalar);
  bool radial = std::holds_alternative<RadialGrid>(geom);
  s.v = GridFunction(geom, radial ? Rank::radial_vector : Rank::vector3);
  return s;
}

GridFunction makino_from_density(const GridFunction& rho,
                                 const EosParams& eos) {
  eos.validate();
  if (rho.rank != Rank::scalar)
    throw std::invalid_argument("makino_from_density: scalar fields only");
  GridFunction w = rho;
  double coeff = eos.makino_coeff();
  double e = (eos.gamma - 1.0) / 2.0;
  for (double& x : w.samples) {
    if (x < 0.0)
      throw std::domain_error("makino_from_density: negative density");
    x = coeff * std::pow(x, e);
  }
  return w;
}

GridFunction density_from_makino(const GridFunction& w, const EosParams& eos) {
  eos.validate();
  if (w.rank != Rank::scalar)
    throw std::invalid_argument("density_from_makino: scalar fields only");
  GridFunction rho = w;
  double coeff = eos.density_coeff();
  double b = eos.beta();
  for (double& x : rho.samples) {
    if (x < 0.0)
      throw std::domain_error("density_from_makino: negative w");
    x = coeff * std::pow(x, b);
  }
  return rho;
}

GridFunction pressure_from_density(const GridFunction& rho,
                                   const EosParams& eos) {
  eos.validate();
  GridFunction p = rho;
  for (double& x : p.samples) x = eos.K * std::pow(x, eos.gamma);
  return p;
}

Mat4 flux_matrix(int c, double w, const std::array<double, 3>& v,
                 const EosParams& eos) {
  if (c < 0 || c > 2) throw std::invalid_argument("flux_matrix: c in {0,1,2}");
  Mat4 A{};
  double vc = v[std::size_t(c)];
  for (int i = 0; i < 4; ++i) A[std::size_t(i)][std::size_t(i)] = vc;
  double coup = (eos.gamma - 1.0) / 2.0 * w;
  A[0][std::size_t(1 + c)] = coup;
  A[std::size_t(1 + c)][0] = coup;
  return A;
}

std::array<double, 4> flux_eigenvalues(const std::array<double, 3>& n, double w,
                                       const std::array<double, 3>& v,
                                       const EosParams& eos) {
  double vn = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
  double a = (eos.gamma - 1.0) / 2.0 * std::abs(w);
  return {vn, vn, vn - a, vn + a};
}

double StaticSolution::rho_exact(double r) const {
  double a = scale;
  return std::pow(a, 2.5) * std::pow(a * a + r * r, -2.5);
}

double StaticSolution::w_exact(double r) const {
  double a = scale;
  return eos.makino_coeff() * std::pow(a, 0.25) * std::pow(a * a + r * r, -0.25);
}

double StaticSolution::phi_exact(double r) const {
  double a = scale;
  return -(4.0 * M_PI / 3.0) * std::sqrt(a) / std::sqrt(a * a + r * r);
}

StaticSolution static_profile(const RadialGrid& g, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("static_profile: scale must be positive");
  StaticSolution s;
  s.eos = EosParams{2.0 * M_PI / 9.0, 6.0 / 5.0};
  s.scale = scale;
  s.mass = 4.0 * M_PI / 3.0 * std::sqrt(scale);
  s.rho = sample_analytic([&s](double r) { return s.rho_exact(r); }, g);
  s.w = sample_analytic([&s](double r) { return s.w_exact(r); }, g);
  s.phi = sample_analytic([&s](double r) { return s.phi_exact(r); }, g);
  return s;
}

}  // namespace epm
