#include "epm/grid.hpp"

#include <cmath>

#include "epm/interp.hpp"

namespace epm {

RadialGrid::RadialGrid(double r_max_, int n_) : r_max(r_max_), n(n_) {
  if (n < 8) throw std::invalid_argument("RadialGrid: n must be >= 8");
  if (r_max <= 0.0) throw std::invalid_argument("RadialGrid: r_max must be > 0");
}

BoxGrid::BoxGrid(double half_width_, int n_) : half_width(half_width_), n(n_) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("BoxGrid: n must be a power of two >= 8");
  if (half_width <= 0.0)
    throw std::invalid_argument("BoxGrid: half_width must be > 0");
}

GridFunction::GridFunction(Geometry g, Rank r) : geom(g), rank(r) {
  if (r == Rank::radial_vector && !std::holds_alternative<RadialGrid>(geom))
    throw std::invalid_argument("radial-vector rank requires a RadialGrid");
  if (r == Rank::vector3 && !std::holds_alternative<BoxGrid>(geom))
    throw std::invalid_argument("vector3 rank requires a BoxGrid");
  samples.assign(npoints() * ncomponents(), 0.0);
}

std::size_t GridFunction::npoints() const {
  if (auto* rg = std::get_if<RadialGrid>(&geom)) return std::size_t(rg->n);
  return std::get<BoxGrid>(geom).size();
}

bool same_geometry(const Geometry& a, const Geometry& b) {
  if (a.index() != b.index()) return false;
  if (auto* ra = std::get_if<RadialGrid>(&a)) {
    auto& rb = std::get<RadialGrid>(b);
    return ra->n == rb.n && ra->r_max == rb.r_max;
  }
  auto& ba = std::get<BoxGrid>(a);
  auto& bb = std::get<BoxGrid>(b);
  return ba.n == bb.n && ba.half_width == bb.half_width;
}

GridFunction sample_analytic(const std::function<double(double)>& f,
                             const RadialGrid& g, Rank rank) {
  GridFunction out(g, rank);
  for (int i = 0; i < g.n; ++i) {
    double v = f(g.node(i));
    if (!std::isfinite(v))
      throw std::domain_error("sample_analytic: non-finite value at r = " +
                              std::to_string(g.node(i)));
    out.samples[i] = v;
  }
  return out;
}

GridFunction sample_analytic(
    const std::function<double(double, double, double)>& f, const BoxGrid& g) {
  GridFunction out(g, Rank::scalar);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        double v = f(g.node(i), g.node(j), g.node(k));
        if (!std::isfinite(v))
          throw std::domain_error(
              "sample_analytic: non-finite value at node (" +
              std::to_string(g.node(i)) + ", " + std::to_string(g.node(j)) +
              ", " + std::to_string(g.node(k)) + ")");
        out.samples[g.index(i, j, k)] = v;
      }
  return out;
}

GridFunction lift_radial_to_box(const GridFunction& u, const BoxGrid& g) {
  if (!u.on_radial())
    throw std::invalid_argument("lift_radial_to_box: input must be radial");
  const RadialGrid& rg = u.radial();
  if (g.half_width > rg.r_max)
    throw std::invalid_argument(
        "lift_radial_to_box: box half-width exceeds the radial domain");

  bool vec = (u.rank == Rank::radial_vector);
  RadialInterpolant interp(rg, u.samples, vec ? Parity::odd : Parity::even);
  GridFunction out(g, vec ? Rank::vector3 : Rank::scalar);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        double x = g.node(i), y = g.node(j), z = g.node(k);
        double r = std::sqrt(x * x + y * y + z * z);
        std::size_t idx = g.index(i, j, k);
        double v = interp(r);
        if (!vec) {
          out.at(idx) = v;
        } else {
          out.at(idx, 0) = v * x / r;
          out.at(idx, 1) = v * y / r;
          out.at(idx, 2) = v * z / r;
        }
      }
  return out;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& xs,
                               int order) {
  // Fornberg's recursion for finite-difference weights.
  int nn = int(xs.size()) - 1;
  int m = order;
  std::vector<std::vector<double>> c(
      std::size_t(nn + 1), std::vector<double>(std::size_t(m + 1), 0.0));
  double c1 = 1.0, c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= nn; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) w[i] = c[i][std::size_t(m)];
  return w;
}

namespace {

// 4th-order first derivative of a 1D line of samples; getter supplies
// ghost values below index 0, one-sided stencils at the top end.
void derive_line(int n, double h, const std::function<double(int)>& get,
                 const std::function<void(int, double)>& set) {
  for (int i = 0; i < n; ++i) {
    if (i >= 2 && i < n - 2) {
      double d = (get(i - 2) - 8.0 * get(i - 1) + 8.0 * get(i + 1) -
                  get(i + 2)) / (12.0 * h);
      set(i, d);
    } else if (i < 2) {
      // ghost values exist below 0 (parity) so the central stencil still works
      double d = (get(i - 2) - 8.0 * get(i - 1) + 8.0 * get(i + 1) -
                  get(i + 2)) / (12.0 * h);
      set(i, d);
    } else {
      // one-sided 5-point at the outer end
      static const double w0[5] = {3.0, -16.0, 36.0, -48.0, 25.0};
      static const double w1[5] = {-1.0, 6.0, -18.0, 10.0, 3.0};
      const double* w = (i == n - 1) ? w0 : w1;
      int base = (i == n - 1) ? n - 5 : n - 5;
      double d = 0.0;
      for (int k = 0; k < 5; ++k) d += w[k] * get(base + k);
      set(i, d / (12.0 * h));
    }
  }
}

}  // namespace

GridFunction derivative(const GridFunction& u, int axis, Parity parity) {
  if (u.rank != Rank::scalar &&
      !(u.rank == Rank::radial_vector && u.on_radial()))
    throw std::invalid_argument("derivative: scalar fields only");
  if (u.on_radial()) {
    const RadialGrid& g = u.radial();
    GridFunction out(g, Rank::scalar);
    double sign = (parity == Parity::even) ? 1.0 : -1.0;
    auto get = [&](int i) -> double {
      if (i < 0) return sign * u.samples[std::size_t(-1 - i)];
      return u.samples[std::size_t(i)];
    };
    derive_line(g.n, g.h(), get,
                [&](int i, double v) { out.samples[std::size_t(i)] = v; });
    return out;
  }
  const BoxGrid& g = u.box();
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: bad axis");
  GridFunction out(g, Rank::scalar);
  int n = g.n;
  double h = g.h();
  static const double wlo0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  static const double wlo1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  static const double whi0[5] = {3.0, -16.0, 36.0, -48.0, 25.0};
  static const double whi1[5] = {-1.0, 6.0, -18.0, 10.0, 3.0};
  std::size_t strides[3] = {std::size_t(n) * n, std::size_t(n), 1};
  std::size_t sa = strides[axis];
  int t1 = (axis == 0) ? 1 : 0;
  int t2 = (axis == 2) ? 1 : 2;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      std::size_t base0 = std::size_t(b) * strides[t1] + std::size_t(c) * strides[t2];
      for (int i = 0; i < n; ++i) {
        double d;
        if (i >= 2 && i < n - 2) {
          d = (u.samples[base0 + (i - 2) * sa] -
               8.0 * u.samples[base0 + (i - 1) * sa] +
               8.0 * u.samples[base0 + (i + 1) * sa] -
               u.samples[base0 + (i + 2) * sa]) / (12.0 * h);
        } else {
          const double* w;
          int s0;
          if (i == 0) { w = wlo0; s0 = 0; }
          else if (i == 1) { w = wlo1; s0 = 0; }
          else if (i == n - 2) { w = whi1; s0 = n - 5; }
          else { w = whi0; s0 = n - 5; }
          d = 0.0;
          for (int k = 0; k < 5; ++k)
            d += w[k] * u.samples[base0 + std::size_t(s0 + k) * sa];
          d /= 12.0 * h;
        }
        out.samples[base0 + std::size_t(i) * sa] = d;
      }
    }
  return out;
}

double max_abs(const GridFunction& u) {
  double m = 0.0;
  for (double v : u.samples) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace epm
