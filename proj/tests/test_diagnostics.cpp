#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <epm/diagnostics.hpp>
#include <epm/fluid.hpp>
#include <epm/grid.hpp>
#include <epm/poisson.hpp>

using namespace epm;

TEST_CASE("total mass of a gaussian") {
  RadialGrid g(32.0, 2048);
  auto rho = sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, g);
  MassResult m = total_mass(rho);
  CHECK_FALSE(m.flagged);
  CHECK(m.value == doctest::Approx(std::pow(2.0 * M_PI, 1.5)).epsilon(1e-9));
}

TEST_CASE("total mass includes the power-law tail correction") {
  RadialGrid g(64.0, 2048);
  auto rho = sample_analytic([](double r) { return std::pow(1.0 + r * r, -2.5); },
                             g);
  MassResult m = total_mass(rho, 5.0);
  CHECK_FALSE(m.flagged);
  CHECK(m.value == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-6));
  // p <= 3 means the extrapolated mass diverges
  MassResult bad = total_mass(rho, 2.5);
  CHECK(bad.flagged);
}

TEST_CASE("total mass on a box grid") {
  BoxGrid g(8.0, 64);
  auto rho = sample_analytic(
      [](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z));
      },
      g);
  MassResult m = total_mass(rho);
  CHECK(m.value == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-6));
}

TEST_CASE("time series enforces increasing t and prints csv") {
  TimeSeries ts;
  DiagnosticRecord r;
  r.t = 0.0;
  r.mass = 1.0;
  ts.append(r);
  r.t = 0.5;
  ts.append(r);
  CHECK_THROWS(ts.append(r));  // equal t rejected
  r.t = 0.25;
  CHECK_THROWS(ts.append(r));
  std::string csv = ts.to_csv();
  CHECK(csv.find("t,") == 0);
  CHECK(csv.find("mass") != std::string::npos);
  // one header plus two rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("energy functional on a uniform ball matches the closed forms") {
  // rho = rho0 on r < R: kinetic 1/2 rho0 v0^2 V, internal K rho0^gamma
  // V / (gamma-1), potential -(3/5) (4 pi / 3)^2 rho0^2 R^5... in the
  // Delta phi = 4 pi rho normalization: W = -16 pi^2 rho0^2 R^5 / 15.
  double R = 2.0, rho0 = 0.3, v0 = 0.1;
  EosParams eos{0.7, 1.4};
  RadialGrid g(16.0, 4096);
  auto rho = sample_analytic([&](double r) { return r < R ? rho0 : 0.0; }, g);
  auto v = sample_analytic([&](double r) { return r < R ? v0 : 0.0; }, g,
                           Rank::radial_vector);
  auto field = solve_poisson_radial(rho);
  double e = energy_functional(rho, v, field.phi, eos);
  double vol = 4.0 * M_PI / 3.0 * R * R * R;
  double expect = 0.5 * rho0 * v0 * v0 * vol +
                  eos.K * std::pow(rho0, eos.gamma) * vol / (eos.gamma - 1.0) -
                  16.0 * M_PI * M_PI * rho0 * rho0 * std::pow(R, 5) / 15.0;
  CHECK(e == doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("potential term agrees with the pairwise oracle") {
  RadialGrid g(32.0, 1024);
  auto rho = sample_analytic([](double r) { return std::exp(-r * r); }, g);
  auto field = solve_poisson_radial(rho);
  auto v = GridFunction(Geometry{g}, Rank::radial_vector);
  EosParams eos{2.0 * M_PI / 9.0, 1.2};
  // subtract kinetic (0) and internal parts to isolate 1/2 int rho phi
  double internal = 0.0;
  {
    auto p = pressure_from_density(rho, eos);
    double h = g.h();
    for (int i = 0; i < g.n; ++i)
      internal += 4.0 * M_PI * g.node(i) * g.node(i) *
                  p.samples[std::size_t(i)] / (eos.gamma - 1.0) * h;
  }
  double e = energy_functional(rho, v, field.phi, eos);
  double direct = potential_energy_direct(rho);
  CHECK(e - internal == doctest::Approx(direct).epsilon(1e-4));
}

TEST_CASE("gronwall fit recovers a synthetic growth rate") {
  double c = 0.8, m0sq = 2.0;
  std::vector<double> t, n2, s;
  for (int i = 0; i <= 40; ++i) {
    double ti = 0.025 * i;
    t.push_back(ti);
    s.push_back(0.0);
    n2.push_back(std::exp(c * ti) * m0sq);
  }
  GronwallFit fit = gronwall_fit(t, n2, s, m0sq);
  CHECK(fit.valid);
  CHECK(fit.c_ls == doctest::Approx(c).epsilon(1e-6));
  CHECK(fit.c_env == doctest::Approx(c).epsilon(1e-6));
  CHECK(fit.residual < 1e-8);
}

TEST_CASE("gronwall fit flags degenerate input") {
  std::vector<double> t, n2, s;
  for (int i = 0; i < 12; ++i) {
    t.push_back(0.1 * i);
    n2.push_back(0.0);
    s.push_back(0.0);
  }
  GronwallFit fit = gronwall_fit(t, n2, s, 0.0);
  CHECK_FALSE(fit.valid);
  // too few samples is an error, not a fit
  std::vector<double> t2{0.0, 0.1}, z2{0.0, 0.0};
  CHECK_THROWS(gronwall_fit(t2, z2, z2, 0.0));
}
