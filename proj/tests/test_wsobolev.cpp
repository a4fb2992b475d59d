#include <doctest.h>

#include <cmath>

#include <epm/dyadic.hpp>
#include <epm/grid.hpp>
#include <epm/quadrature.hpp>
#include <epm/wsobolev.hpp>

using namespace epm;

namespace {
GridFunction box_gaussian(const BoxGrid& g, double sigma) {
  return sample_analytic(
      [sigma](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z) / (2.0 * sigma * sigma));
      },
      g);
}
}  // namespace

TEST_CASE("hs_norm at s=0 is the L2 norm (Parseval)") {
  BoxGrid g(4.0, 32);
  auto u = box_gaussian(g, 0.8);
  double l2 = std::sqrt(volume_integral_box([&] {
    GridFunction sq = u;
    for (double& v : sq.samples) v *= v;
    return sq;
  }()));
  CHECK(hs_norm(u, 0.0).value == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("hs_norm flags slow decay at the box faces") {
  BoxGrid g(4.0, 32);
  CHECK(hs_norm(box_gaussian(g, 0.5), 1.0).boundary_ok);
  CHECK_FALSE(hs_norm(box_gaussian(g, 4.0), 1.0).boundary_ok);
}

TEST_CASE("1D sine-transform path agrees with the 3D FFT path") {
  RadialGrid rg(16.0, 1024);
  BoxGrid bg(8.0, 64);
  auto ur = sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, rg);
  auto ub = box_gaussian(bg, 1.0);
  for (double s : {0.0, 1.0, 2.0}) {
    double oned = hs_norm_radial(rg, ur.samples, s, 24.0, 2000);
    double threed = hs_norm(ub, s).value;
    CHECK(oned == doctest::Approx(threed).epsilon(2e-3));
  }
}

TEST_CASE("weighted norm is monotone in s and delta") {
  RadialGrid g(64.0, 1024);
  DyadicPartition part(10);
  auto u = sample_analytic([](double r) { return std::exp(-r * r / 8.0); }, g);
  WeightedNormSpec lo, hi;
  lo.s = 1.0; lo.delta = -1.2; lo.j_max = 10;
  hi.s = 2.6; hi.delta = -0.9; hi.j_max = 10;
  double nlo = weighted_norm(u, lo, part).norm();
  double nhi = weighted_norm(u, hi, part).norm();
  CHECK(nlo < nhi * 1.001);
}

TEST_CASE("dyadic and integer-order norms are equivalent on a corpus") {
  RadialGrid g(64.0, 1024);
  DyadicPartition part(12);
  for (int m = 0; m <= 2; ++m) {
    double rlo = 1e300, rhi = 0.0;
    for (double sigma : {0.5, 1.0, 2.0}) {
      auto u = sample_analytic(
          [sigma](double r) { return std::exp(-r * r / (2.0 * sigma * sigma)); },
          g);
      WeightedNormSpec spec;
      spec.s = m; spec.delta = -1.2; spec.j_max = 12;
      double ratio = weighted_norm(u, spec, part).norm() /
                     weighted_norm_integer(u, m, -1.2);
      rlo = std::min(rlo, ratio);
      rhi = std::max(rhi, ratio);
    }
    CHECK(rhi / rlo < 10.0);
    CHECK(rlo > 0.1);
    CHECK(rhi < 30.0);
  }
}

TEST_CASE("slow-decay membership boundary") {
  // u = (1+r^2)^{-1/4}: shell terms scale as 2^{(2+2 delta) j}, so the sum
  // converges for delta < -1 and grows geometrically above it.
  RadialGrid g(16384.0, 65536);
  DyadicPartition part(12);
  auto u = sample_analytic([](double r) { return std::pow(1.0 + r * r, -0.25); },
                           g);
  WeightedNormSpec spec;
  spec.s = 2.6; spec.j_max = 12;

  spec.delta = -1.2;
  auto conv = weighted_norm(u, spec, part);
  CHECK_FALSE(conv.truncated);
  CHECK(conv.tail > 0.0);  // geometric remainder recognized and summed
  // measured decay ratio of the outer shells: 2^{2+2 delta} = 2^{-0.4}
  std::size_t last = conv.shells.size() - 1;
  CHECK(conv.shells[last] / conv.shells[last - 1] ==
        doctest::Approx(std::exp2(2.0 + 2.0 * spec.delta)).epsilon(1e-3));

  spec.delta = -0.8;
  auto div = weighted_norm(u, spec, part);
  CHECK(div.truncated);
  CHECK(div.shells[last] / div.shells[last - 1] ==
        doctest::Approx(std::exp2(2.0 + 2.0 * spec.delta)).epsilon(1e-3));
}

TEST_CASE("s=0 shell sum against direct window quadrature") {
  RadialGrid g(64.0, 2048);
  DyadicPartition part(10);
  auto u = sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, g);
  WeightedNormSpec spec;
  spec.s = 0.0; spec.delta = -1.2; spec.j_max = 10;
  double shell_path = weighted_norm(u, spec, part).norm();
  // at s=0 the definition reduces to sum_j 2^{2 delta j} || psi_j u ||_L2^2
  double acc = 0.0;
  for (int j = 0; j <= 10; ++j) {
    std::vector<double> f(std::size_t(g.n));
    for (int i = 0; i < g.n; ++i) {
      double r = g.node(i);
      double w = part.shell(j, r) * u.samples[std::size_t(i)];
      f[std::size_t(i)] = w * w;
    }
    acc += std::exp2(2.0 * spec.delta * j) * volume_integral_radial(g, f);
  }
  CHECK(shell_path == doctest::Approx(std::sqrt(acc)).epsilon(0.05));
}

TEST_CASE("l2_delta_norm against 1D quadrature") {
  RadialGrid g(64.0, 2048);
  auto u = sample_analytic([](double r) { return std::exp(-r); }, g);
  auto f = [](double r) {
    double w = std::pow(1.0 + r, -1.2) * std::exp(-r);
    return 4.0 * M_PI * r * r * w * w;
  };
  // split so the adaptive rule sees the mass near the origin
  double direct = std::sqrt(integrate_1d(f, 0.0, 8.0) +
                            integrate_1d(f, 8.0, 64.0));
  CHECK(l2_delta_norm(u, -1.2) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("weighted_sup_norm of an exact power profile") {
  RadialGrid g(512.0, 4096);
  auto u = sample_analytic([](double r) { return std::pow(1.0 + r, -1.5); }, g);
  CHECK(weighted_sup_norm(u, 1.5, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("weighted inner product is a symmetric bilinear pairing") {
  RadialGrid g(64.0, 1024);
  DyadicPartition part(8);
  WeightedNormSpec spec;
  spec.s = 1.5; spec.delta = -1.2; spec.j_max = 8;
  auto u = sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, g);
  auto v = sample_analytic([](double r) { return std::exp(-r); }, g);
  auto uv = weighted_inner_product(u, v, spec, part);
  auto vu = weighted_inner_product(v, u, spec, part);
  CHECK(uv.value == doctest::Approx(vu.value).epsilon(1e-12));
  auto uu = weighted_inner_product(u, u, spec, part);
  auto vv = weighted_inner_product(v, v, spec, part);
  CHECK(uu.value > 0.0);
  CHECK(uv.value * uv.value <= uu.value * vv.value * (1.0 + 1e-12));
  // scaling in the first slot
  GridFunction u3 = u;
  for (double& x : u3.samples) x *= 3.0;
  auto u3v = weighted_inner_product(u3, v, spec, part);
  CHECK(u3v.value == doctest::Approx(3.0 * uv.value).epsilon(1e-12));
}

TEST_CASE("spec validation rejects nonsense") {
  WeightedNormSpec spec;
  spec.s = -1.0;
  CHECK_THROWS(spec.validate());
  spec = WeightedNormSpec{};
  spec.j_max = 1;
  CHECK_THROWS(spec.validate());
}
