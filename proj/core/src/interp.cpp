#include "epm/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epm {

namespace {
constexpr int kGhost = 2;
}

RadialInterpolant::RadialInterpolant(const RadialGrid& g,
                                     const std::vector<double>& values,
                                     Parity parity,
                                     double tail_exponent_override)
    : grid_(g) {
  if (int(values.size()) < g.n)
    throw std::invalid_argument("RadialInterpolant: sample count mismatch");
  int n = g.n;
  double sign = (parity == Parity::even) ? 1.0 : -1.0;
  r_.resize(std::size_t(n) + kGhost);
  v_.resize(std::size_t(n) + kGhost);
  for (int i = -kGhost; i < n; ++i) {
    r_[std::size_t(i + kGhost)] = g.node(i);  // node(-1) = -h/2 etc.
    v_[std::size_t(i + kGhost)] =
        (i >= 0) ? values[std::size_t(i)] : sign * values[std::size_t(-1 - i)];
  }

  // 4th-order slopes, one-sided near the top.
  int m = int(r_.size());
  slope_.resize(r_.size());
  double h = g.h();
  for (int i = 0; i < m; ++i) {
    if (i >= 2 && i < m - 2) {
      slope_[std::size_t(i)] = (v_[std::size_t(i - 2)] - 8.0 * v_[std::size_t(i - 1)] +
                   8.0 * v_[std::size_t(i + 1)] - v_[std::size_t(i + 2)]) /
                  (12.0 * h);
    } else if (i < 2) {
      // extend parity below the ghosts
      auto gv = [&](int j) -> double {
        if (j >= 0) return v_[std::size_t(j)];
        // extended index j corresponds to physical node j-kGhost; mirror it
        return sign * values[std::size_t(-(j - kGhost) - 1)];
      };
      slope_[std::size_t(i)] =
          (gv(i - 2) - 8.0 * gv(i - 1) + 8.0 * gv(i + 1) - gv(i + 2)) /
          (12.0 * h);
    } else {
      static const double w1[5] = {-1.0, 6.0, -18.0, 10.0, 3.0};
      static const double w0[5] = {3.0, -16.0, 36.0, -48.0, 25.0};
      const double* w = (i == m - 1) ? w0 : w1;
      double d = 0.0;
      for (int k = 0; k < 5; ++k) d += w[k] * v_[std::size_t(m - 5 + k)];
      slope_[std::size_t(i)] = d / (12.0 * h);
    }
  }

  // Fritsch-Carlson limiting, active only where the Hermite slopes would
  // overshoot; leaves smooth monotone data untouched.
  for (int i = 0; i + 1 < m; ++i) {
    double d = (v_[std::size_t(i + 1)] - v_[std::size_t(i)]) / h;
    if (d == 0.0) continue;
    double a = slope_[std::size_t(i)] / d, b = slope_[std::size_t(i + 1)] / d;
    if (a < 0.0) slope_[std::size_t(i)] = 0.0;
    if (b < 0.0) slope_[std::size_t(i + 1)] = 0.0;
    double s = a * a + b * b;
    if (s > 9.0) {
      double tau = 3.0 / std::sqrt(s);
      slope_[std::size_t(i)] = tau * a * d;
      slope_[std::size_t(i + 1)] = tau * b * d;
    }
  }

  tail_r_ = g.node(n - 1);
  tail_value_ = values[std::size_t(n - 1)];
  if (tail_exponent_override != 0.0) {
    tail_p_ = tail_exponent_override;
  } else {
    // log-log slope over the last decade of radii
    double r_lo = tail_r_ / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
      double r = g.node(i);
      double val = std::abs(values[std::size_t(i)]);
      if (r < r_lo || val <= 0.0) continue;
      double lx = std::log(r), ly = std::log(val);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
      ++cnt;
    }
    if (cnt >= 4) {
      double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      tail_p_ = std::max(0.0, -slope);
    } else {
      tail_p_ = 0.0;
    }
  }
  if (tail_value_ == 0.0) tail_p_ = 0.0;
}

double RadialInterpolant::operator()(double r) const {
  if (r >= tail_r_) {
    if (tail_p_ == 0.0) return tail_value_;
    return tail_value_ * std::pow(r / tail_r_, -tail_p_);
  }
  double h = grid_.h();
  // cell containing r in the ghost-extended node array
  double x = (r - r_[0]) / h;
  int i = std::clamp(int(std::floor(x)), 0, int(r_.size()) - 2);
  double t = (r - r_[std::size_t(i)]) / h;
  double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  double h10 = t * (1.0 - t) * (1.0 - t);
  double h01 = t * t * (3.0 - 2.0 * t);
  double h11 = t * t * (t - 1.0);
  return h00 * v_[std::size_t(i)] + h10 * h * slope_[std::size_t(i)] +
         h01 * v_[std::size_t(i + 1)] + h11 * h * slope_[std::size_t(i + 1)];
}

BoxInterpolant::BoxInterpolant(const GridFunction& u, int comp)
    : grid_(u.box()), field_(&u), comp_(comp) {}

double BoxInterpolant::operator()(double x, double y, double z) const {
  const BoxGrid& g = grid_;
  double L = g.half_width, h = g.h();
  if (std::abs(x) >= L || std::abs(y) >= L || std::abs(z) >= L) return 0.0;
  double pos[3] = {x, y, z};
  int base[3];
  double lam[3][4];
  for (int d = 0; d < 3; ++d) {
    double t = (pos[d] + L) / h - 0.5;  // node index coordinate
    int i1 = int(std::floor(t));
    int b = std::clamp(i1 - 1, 0, g.n - 4);
    base[d] = b;
    double s = t - b;  // in [0,3] relative to the 4-point stencil
    // Lagrange basis on nodes {0,1,2,3}
    lam[d][0] = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    lam[d][1] = s * (s - 2.0) * (s - 3.0) / 2.0;
    lam[d][2] = -s * (s - 1.0) * (s - 3.0) / 2.0;
    lam[d][3] = s * (s - 1.0) * (s - 2.0) / 6.0;
  }
  double acc = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double lab = lam[0][a] * lam[1][b];
      for (int c = 0; c < 4; ++c) {
        std::size_t idx = g.index(base[0] + a, base[1] + b, base[2] + c);
        acc += lab * lam[2][c] * field_->at(idx, comp_);
      }
    }
  return acc;
}

}  // namespace epm
