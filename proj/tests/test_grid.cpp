#include <doctest.h>

#include <cmath>

#include <epm/grid.hpp>

using namespace epm;

TEST_CASE("radial grid nodes are cell-centered") {
  RadialGrid g(8.0, 16);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.node(0) == doctest::Approx(0.25));
  CHECK(g.node(15) == doctest::Approx(7.75));
}

TEST_CASE("box grid nodes are symmetric about the origin") {
  BoxGrid g(4.0, 16);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.node(0) == doctest::Approx(-3.75));
  CHECK(g.node(15) == doctest::Approx(3.75));
  CHECK(g.node(7) == doctest::Approx(-g.node(8)));
  CHECK(g.index(1, 2, 3) == (std::size_t(1) * 16 + 2) * 16 + 3);
}

TEST_CASE("sample_analytic rejects non-finite values") {
  RadialGrid g(4.0, 8);
  double pole = g.node(3);
  CHECK_THROWS_AS(
      sample_analytic([pole](double r) { return 1.0 / (r - pole); }, g),
      std::domain_error);
}

TEST_CASE("radial derivative is 4th order on smooth data") {
  double prev = 0.0;
  for (int n : {64, 128}) {
    RadialGrid g(4.0, n);
    auto u = sample_analytic([](double r) { return std::cos(r); }, g);
    auto d = derivative(u, 0, Parity::even);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst,
                       std::abs(d.samples[std::size_t(i)] + std::sin(g.node(i))));
    if (prev > 0.0) CHECK(prev / worst > 12.0);
    prev = worst;
  }
  CHECK(prev < 5e-7);
}

TEST_CASE("radial derivative honors odd parity at the origin") {
  RadialGrid g(4.0, 256);
  auto u = sample_analytic([](double r) { return r * std::exp(-r * r); }, g,
                           Rank::radial_vector);
  auto d = derivative(u, 0, Parity::odd);
  double r0 = g.node(0);
  double exact = (1.0 - 2.0 * r0 * r0) * std::exp(-r0 * r0);
  CHECK(d.samples[0] == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("box derivative is 4th order on the analytic gradient") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    BoxGrid g(4.0, n);
    auto u = sample_analytic(
        [](double x, double y, double z) {
          return std::exp(-(x * x + 0.5 * y * y + 0.25 * z * z));
        },
        g);
    auto dx = derivative(u, 0);
    double worst = 0.0;
    for (int i = 2; i < n - 2; ++i)
      for (int j = 2; j < n - 2; ++j)
        for (int k = 2; k < n - 2; ++k) {
          double x = g.node(i), y = g.node(j), z = g.node(k);
          double exact =
              -2.0 * x * std::exp(-(x * x + 0.5 * y * y + 0.25 * z * z));
          worst =
              std::max(worst, std::abs(dx.samples[g.index(i, j, k)] - exact));
        }
    if (prev > 0.0) CHECK(prev / worst > 12.0);
    prev = worst;
  }
  CHECK(prev < 5e-4);
}

TEST_CASE("fd_weights reproduces exact derivatives of polynomials") {
  std::vector<double> xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
  auto w = fd_weights(0.0, xs, 1);
  double d = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) d += w[k] * xs[k] * xs[k] * xs[k];
  CHECK(d == doctest::Approx(0.0).epsilon(1e-12));  // (x^3)' = 3x^2 = 0 at 0
  d = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k)
    d += w[k] * xs[k] * xs[k] * xs[k] * xs[k];
  CHECK(d == doctest::Approx(0.0).epsilon(1e-12));  // (x^4)' = 4x^3 = 0 at 0
}

TEST_CASE("lift_radial_to_box reproduces the profile at box nodes") {
  RadialGrid rg(16.0, 512);
  BoxGrid bg(4.0, 16);
  auto u = sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, rg);
  auto lifted = lift_radial_to_box(u, bg);
  double worst = 0.0;
  for (int i = 0; i < bg.n; ++i)
    for (int j = 0; j < bg.n; ++j)
      for (int k = 0; k < bg.n; ++k) {
        double x = bg.node(i), y = bg.node(j), z = bg.node(k);
        double r = std::sqrt(x * x + y * y + z * z);
        worst = std::max(worst, std::abs(lifted.samples[bg.index(i, j, k)] -
                                         std::exp(-r * r / 2.0)));
      }
  CHECK(worst < 1e-6);
}

TEST_CASE("lifting a radial vector points along x/|x|") {
  RadialGrid rg(16.0, 512);
  BoxGrid bg(4.0, 16);
  auto v = sample_analytic([](double r) { return r * std::exp(-r); }, rg,
                           Rank::radial_vector);
  auto lifted = lift_radial_to_box(v, bg);
  REQUIRE(lifted.rank == Rank::vector3);
  int i = 12, j = 8, k = 8;
  double x = bg.node(i), y = bg.node(j), z = bg.node(k);
  double r = std::sqrt(x * x + y * y + z * z);
  double mag = r * std::exp(-r);
  CHECK(lifted.at(bg.index(i, j, k), 0) ==
        doctest::Approx(mag * x / r).epsilon(1e-5));
  CHECK(lifted.at(bg.index(i, j, k), 1) ==
        doctest::Approx(mag * y / r).epsilon(1e-5));
}

TEST_CASE("max_abs scans all components") {
  BoxGrid g(2.0, 8);
  GridFunction u(g, Rank::vector3);
  u.at(5, 2) = -7.5;
  CHECK(max_abs(u) == doctest::Approx(7.5));
}
