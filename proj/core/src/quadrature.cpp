#include "epm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epm {

std::vector<double> cumulative_integral(const RadialGrid& g,
                                        const std::vector<double>& f,
                                        std::optional<Parity> origin_parity) {
  // F(r_i) = int_0^{r_i} f dr where r_i are midpoints. Build edge-to-edge
  // cell integrals of the interpolant, then add the half-cell up to r_i.
  int n = g.n;
  if (int(f.size()) != n)
    throw std::invalid_argument("cumulative_integral: size mismatch");

  // With a known parity the stencil near the origin is centered through
  // mirrored ghost samples, avoiding one-sided extrapolation there.
  double sign = (origin_parity && *origin_parity == Parity::odd) ? -1.0 : 1.0;
  int lo = origin_parity ? -3 : 0;
  auto fval = [&](int j) {
    if (j >= 0) return f[std::size_t(j)];
    return sign * f[std::size_t(-j - 1)];
  };

  // Degree-5 Lagrange weights for sub-intervals near the ends are obtained
  // by integrating the polynomial through 6 samples directly.
  auto poly_integral = [&](int base, double a, double b) {
    // integrate interpolant of f[base..base+5] (nodes at (base+k+1/2)h)
    // over [a, b] by 3-point Gauss-Legendre (exact for degree 5)
    static const double gx[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
    static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    double acc = 0.0;
    for (int q = 0; q < 3; ++q) {
      double x = a + (b - a) * gx[q];
      // Lagrange evaluation
      double val = 0.0;
      for (int k = 0; k < 6; ++k) {
        double lk = 1.0;
        double xk = g.node(base + k);
        for (int m = 0; m < 6; ++m) {
          if (m == k) continue;
          double xm = g.node(base + m);
          lk *= (x - xm) / (xk - xm);
        }
        val += lk * fval(base + k);
      }
      acc += gw[q] * val;
    }
    return acc * (b - a);
  };

  std::vector<double> F(std::size_t(n), 0.0);
  // F at first midpoint: integrate over [0, h/2] with the boundary stencil
  F[0] = poly_integral(lo, 0.0, g.node(0));
  for (int i = 1; i < n; ++i) {
    int base = std::clamp(i - 3, lo, n - 6);
    double seg = poly_integral(base, g.node(i - 1), g.node(i));
    F[std::size_t(i)] = F[std::size_t(i - 1)] + seg;
  }
  return F;
}

double integrate(const RadialGrid& g, const std::vector<double>& f) {
  auto F = cumulative_integral(g, f);
  // final half cell [r_{n-1}, r_max] via the one-sided interpolant
  static const double gx[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
  static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  int base = g.n - 6;
  double a = g.node(g.n - 1), b = g.r_max;
  double tail = 0.0;
  for (int q = 0; q < 3; ++q) {
    double x = a + (b - a) * gx[q];
    double val = 0.0;
    for (int k = 0; k < 6; ++k) {
      double lk = 1.0;
      double xk = g.node(base + k);
      for (int m = 0; m < 6; ++m) {
        if (m == k) continue;
        lk *= (x - g.node(base + m)) / (xk - g.node(base + m));
      }
      val += lk * f[std::size_t(base + k)];
    }
    tail += gw[q] * val;
  }
  return F[std::size_t(g.n - 1)] + tail * (b - a);
}

double volume_integral_radial(const RadialGrid& g, const std::vector<double>& u,
                              double tail_exponent) {
  std::vector<double> f(u.size());
  for (int i = 0; i < g.n; ++i) {
    double r = g.node(i);
    f[std::size_t(i)] = u[std::size_t(i)] * r * r;
  }
  double val = 4.0 * M_PI * integrate(g, f);
  if (tail_exponent > 3.0) {
    double p = tail_exponent;
    double uN = u[std::size_t(g.n - 1)];
    double rN = g.node(g.n - 1);
    // int_{r_max}^inf u_N (r/r_N)^{-p} r^2 dr
    val += 4.0 * M_PI * uN * rN * rN * rN *
           (std::pow(g.r_max / rN, 3.0 - p)) / (p - 3.0);
  }
  return val;
}

double volume_integral_box(const GridFunction& u) {
  const BoxGrid& g = u.box();
  double h3 = g.h() * g.h() * g.h();
  double s = 0.0;
  for (double v : u.samples) s += v;
  return s * h3;
}

namespace {
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol, int max_depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace epm
