#include "epm/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "epm/quadrature.hpp"

namespace epm {

namespace {

// max |phi'' + 2 phi'/r - 4 pi rho| away from the one-sided outer stencils
double radial_residual(const GridFunction& phi, const GridFunction& rho) {
  const RadialGrid& g = phi.radial();
  GridFunction d1 = derivative(phi, 0, Parity::even);
  GridFunction d2 = derivative(d1, 0, Parity::odd);
  double worst = 0.0;
  for (int i = 0; i < g.n - 4; ++i) {
    double r = g.node(i);
    double lap = d2.samples[std::size_t(i)] + 2.0 * d1.samples[std::size_t(i)] / r;
    worst = std::max(std::abs(lap - 4.0 * M_PI * rho.samples[std::size_t(i)]),
                     worst);
  }
  return worst;
}

}  // namespace

PotentialField solve_poisson_radial(const GridFunction& rho,
                                    const PoissonOptions& opt) {
  if (!rho.on_radial() || rho.rank != Rank::scalar)
    throw std::invalid_argument("solve_poisson_radial: scalar radial density");
  const RadialGrid& g = rho.radial();
  std::size_t n = std::size_t(g.n);

  std::vector<double> rs2(n), rs1(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = g.node(int(i));
    rs2[i] = rho.samples[i] * r * r;
    rs1[i] = rho.samples[i] * r;
  }
  // rho is even about the origin, so rho s^2 is even and rho s is odd
  std::vector<double> m_in = cumulative_integral(g, rs2, Parity::even);
  std::vector<double> s_in = cumulative_integral(g, rs1, Parity::odd);
  double s_total = integrate(g, rs1);

  PotentialField out;
  double p = opt.tail_exponent;
  double tail = 0.0;
  if (p > 2.0) {
    // two-term power-law fit A r^-p + B r^-(p+2) through two outer nodes
    std::size_t ia = n - 1, ib = n / 2;
    double ra = g.node(int(ia)), rb = g.node(int(ib));
    double fa = rho.samples[ia], fb = rho.samples[ib];
    double a11 = std::pow(ra, -p), a12 = std::pow(ra, -p - 2.0);
    double a21 = std::pow(rb, -p), a22 = std::pow(rb, -p - 2.0);
    double det = a11 * a22 - a12 * a21;
    double A = 0.0, B = 0.0;
    if (det != 0.0) {
      A = (fa * a22 - a12 * fb) / det;
      B = (a11 * fb - fa * a21) / det;
    }
    // int_{r_max}^inf (A s^-p + B s^-(p+2)) s ds
    tail = A * std::pow(g.r_max, 2.0 - p) / (p - 2.0) +
           B * std::pow(g.r_max, -p) / p;
  } else if (rho.samples[n - 1] != 0.0) {
    out.flagged = true;
  }

  out.phi = GridFunction(g, Rank::scalar);
  out.grad = GridFunction(g, Rank::radial_vector);
  for (std::size_t i = 0; i < n; ++i) {
    double r = g.node(int(i));
    out.phi.samples[i] =
        -4.0 * M_PI * (m_in[i] / r + (s_total - s_in[i]) + tail);
    out.grad.samples[i] = 4.0 * M_PI * m_in[i] / (r * r);
  }
  double phimax = max_abs(out.phi);
  if (phimax > 0.0 && std::abs(4.0 * M_PI * tail) > opt.tail_tol * phimax)
    out.flagged = true;
  out.residual = radial_residual(out.phi, rho);
  return out;
}

namespace {

// antiderivative of 1/|x| for a cuboid: the triple integral over
// [0,a]x[0,b]x[0,c] is the alternating corner sum of this function
double cuboid_primitive(double x, double y, double z) {
  double r = std::sqrt(x * x + y * y + z * z);
  if (r == 0.0) return 0.0;
  double v = 0.0;
  if (x != 0.0 && y != 0.0) v += x * y * std::log(z + r);
  if (y != 0.0 && z != 0.0) v += y * z * std::log(x + r);
  if (z != 0.0 && x != 0.0) v += z * x * std::log(y + r);
  if (x != 0.0) v -= 0.5 * x * x * std::atan2(y * z, x * r);
  if (y != 0.0) v -= 0.5 * y * y * std::atan2(z * x, y * r);
  if (z != 0.0) v -= 0.5 * z * z * std::atan2(x * y, z * r);
  return v;
}

}  // namespace

double kernel_cell_average() {
  // 8 int_{[0,1/2]^3} dx/|x| by the alternating corner sum over the cuboid
  double b = 0.5;
  double acc = 0.0;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k) {
        double sign = ((i + j + k) % 2 == 0) ? -1.0 : 1.0;
        acc += sign * cuboid_primitive(i * b, j * b, k * b);
      }
  return 8.0 * acc;
}

PotentialField solve_poisson_box(const GridFunction& rho,
                                 const PoissonOptions& opt) {
  (void)opt;
  if (rho.on_radial() || rho.rank != Rank::scalar)
    throw std::invalid_argument("solve_poisson_box: scalar box density");
  const BoxGrid& g = rho.box();
  int n = g.n, m = 2 * n;
  double h = g.h();
  std::size_t msz = std::size_t(m) * m * m;

  std::vector<std::complex<double>> rpad(msz, 0.0), ker(msz, 0.0);
  auto midx = [m](int i, int j, int k) {
    return (std::size_t(i) * m + j) * m + k;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        rpad[midx(i, j, k)] = rho.samples[g.index(i, j, k)];

  // kernel value for offset cell d: exact average of -1/|x| over the cell,
  // so the convolution is the exact potential of a cellwise-constant density
  std::vector<double> oct(std::size_t(n + 1) * (n + 1) * (n + 1));
  auto cell_avg = [h](int oi, int oj, int ok) {
    // the corner-sum primitive is invalid across the singular cell
    if (oi == 0 && oj == 0 && ok == 0) return -kernel_cell_average() / h;
    double acc = 0.0;
    for (int ci = 0; ci <= 1; ++ci)
      for (int cj = 0; cj <= 1; ++cj)
        for (int ck = 0; ck <= 1; ++ck) {
          double sign = ((ci + cj + ck) % 2 == 0) ? -1.0 : 1.0;
          acc += sign * cuboid_primitive(h * (oi + ci - 0.5),
                                         h * (oj + cj - 0.5),
                                         h * (ok + ck - 0.5));
        }
    return -acc / (h * h * h);
  };
  for (int oi = 0; oi <= n; ++oi)
    for (int oj = 0; oj <= n; ++oj)
      for (int ok = 0; ok <= n; ++ok)
        oct[(std::size_t(oi) * (n + 1) + oj) * (n + 1) + ok] =
            cell_avg(oi, oj, ok);
  for (int i = 0; i < m; ++i) {
    int oi = std::abs((i < n) ? i : i - m);
    for (int j = 0; j < m; ++j) {
      int oj = std::abs((j < n) ? j : j - m);
      for (int k = 0; k < m; ++k) {
        int ok = std::abs((k < n) ? k : k - m);
        ker[midx(i, j, k)] =
            oct[(std::size_t(oi) * (n + 1) + oj) * (n + 1) + ok];
      }
    }
  }

  auto* fr = reinterpret_cast<fftw_complex*>(rpad.data());
  auto* fk = reinterpret_cast<fftw_complex*>(ker.data());
  fftw_plan pf = fftw_plan_dft_3d(m, m, m, fr, fr, FFTW_FORWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_execute_dft(pf, fr, fr);
  fftw_execute_dft(pf, fk, fk);
  double scale = h * h * h / double(msz);
  for (std::size_t i = 0; i < msz; ++i) rpad[i] *= ker[i] * scale;
  fftw_plan pb = fftw_plan_dft_3d(m, m, m, fr, fr, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_execute_dft(pb, fr, fr);
  fftw_destroy_plan(pf);
  fftw_destroy_plan(pb);

  PotentialField out;
  out.phi = GridFunction(g, Rank::scalar);
  // midpoint samples miss the h^2/24 Laplacian term of the cell averages;
  // convolving that deficit with the kernel contributes (pi h^2/6) rho
  double corr = -M_PI * h * h / 6.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.phi.samples[g.index(i, j, k)] =
            rpad[midx(i, j, k)].real() + corr * rho.samples[g.index(i, j, k)];

  // density support check: mass outside the inner half of the box
  double total = 0.0, outer = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++idx) {
        double v = std::abs(rho.samples[idx]);
        total += v;
        bool inner = std::abs(g.node(i)) <= g.half_width / 2.0 &&
                     std::abs(g.node(j)) <= g.half_width / 2.0 &&
                     std::abs(g.node(k)) <= g.half_width / 2.0;
        if (!inner) outer += v;
      }
  if (total > 0.0 && outer > 1e-2 * total) out.flagged = true;

  out.grad = GridFunction(g, Rank::vector3);
  GridFunction lap(g, Rank::scalar);
  for (int ax = 0; ax < 3; ++ax) {
    GridFunction d1 = derivative(out.phi, ax);
    GridFunction d2 = derivative(d1, ax);
    std::size_t np = out.phi.npoints();
    for (std::size_t q = 0; q < np; ++q) {
      out.grad.at(q, ax) = d1.samples[q];
      lap.samples[q] += d2.samples[q];
    }
  }
  double worst = 0.0;
  int lo = 4, hi = n - 4;
  for (int i = lo; i < hi; ++i)
    for (int j = lo; j < hi; ++j)
      for (int k = lo; k < hi; ++k) {
        std::size_t q = g.index(i, j, k);
        worst = std::max(
            worst, std::abs(lap.samples[q] - 4.0 * M_PI * rho.samples[q]));
      }
  out.residual = worst;
  return out;
}

double elliptic_estimate_report(const GridFunction& rho,
                                const PotentialField& field,
                                const WeightedNormSpec& spec,
                                const DyadicPartition& part) {
  if (!(spec.delta > -1.5 && spec.delta < -0.5))
    throw std::invalid_argument(
        "elliptic_estimate_report: requires delta in (-3/2, -1/2)");
  if (max_abs(rho) == 0.0) return 0.0;
  WeightedNormSpec top = spec;
  top.s = spec.s - 1.0;
  top.delta = spec.delta + 1.0;
  WeightedNormSpec bot = spec;
  bot.s = spec.s - 2.0;
  bot.delta = spec.delta + 2.0;
  double num = weighted_norm(field.grad, top, part).norm();
  double den = weighted_norm(rho, bot, part).norm();
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace epm
