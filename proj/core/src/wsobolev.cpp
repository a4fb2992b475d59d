#include "epm/wsobolev.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "epm/interp.hpp"
#include "epm/quadrature.hpp"

namespace epm {

void WeightedNormSpec::validate() const {
  if (s < 0.0)
    throw std::invalid_argument(
        "WeightedNormSpec: negative s is unsupported (dual spaces out of scope)");
  if (j_max < 2) throw std::invalid_argument("WeightedNormSpec: j_max >= 2");
  if (shell_n < 8) throw std::invalid_argument("WeightedNormSpec: shell_n >= 8");
  if (tail_tol <= 0.0)
    throw std::invalid_argument("WeightedNormSpec: tail_tol > 0");
}

double NormBreakdown::norm() const { return std::sqrt(total + tail); }

namespace {

// cached in-place complex FFT plans keyed by n
fftw_plan plan_for(int n, fftw_complex* buf) {
  static std::map<int, fftw_plan> cache;
  auto it = cache.find(n);
  if (it != cache.end()) {
    return it->second;
  }
  fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

std::vector<std::complex<double>> dft3(const std::vector<double>& vals, int n) {
  std::vector<std::complex<double>> buf(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) buf[i] = vals[i];
  auto* fbuf = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan_for(n, fbuf), fbuf, fbuf);
  return buf;
}

// frequency of DFT bin m on an n-point axis of physical length 2L
double freq(int m, int n, double L) {
  int mm = (m <= n / 2) ? m : m - n;
  return M_PI / L * mm;
}

// sum_q (1+|xi_q|^2)^s w(q) over the frequency lattice, where w is either
// |u_hat|^2 or Re(u_hat conj(v_hat)), including all normalization so the
// s = 0 case is the discrete L2 pairing.
double spectral_sum(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>* b, int n, double L,
                    double s) {
  double h = 2.0 * L / n;
  double scale = std::pow(h, 6) * std::pow(M_PI / L, 3) /
                 std::pow(2.0 * M_PI, 3);
  double acc = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    double ki = freq(i, n, L);
    for (int j = 0; j < n; ++j) {
      double kj = freq(j, n, L);
      for (int k = 0; k < n; ++k, ++idx) {
        double kk = freq(k, n, L);
        double w = b ? (a[idx].real() * (*b)[idx].real() +
                        a[idx].imag() * (*b)[idx].imag())
                     : std::norm(a[idx]);
        acc += std::pow(1.0 + ki * ki + kj * kj + kk * kk, s) * w;
      }
    }
  }
  return acc * scale;
}

bool boundary_small(const GridFunction& u, double tol) {
  const BoxGrid& g = u.box();
  double m = max_abs(u);
  if (m == 0.0) return true;
  double bmax = 0.0;
  int n = g.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int face = 0; face < 6; ++face) {
        int i = face == 0 ? 0 : (face == 1 ? n - 1 : a);
        int j = face == 2 ? 0 : (face == 3 ? n - 1 : (face < 2 ? a : b));
        int k = face == 4 ? 0 : (face == 5 ? n - 1 : b);
        bmax = std::max(bmax, std::abs(u.samples[g.index(i, j, k)]));
      }
  return bmax <= tol * m;
}

}  // namespace

HsResult hs_norm(const GridFunction& u, double s, double boundary_tol) {
  if (!std::holds_alternative<BoxGrid>(u.geom) || u.rank != Rank::scalar)
    throw std::invalid_argument("hs_norm: scalar box fields only");
  if (s < 0.0)
    throw std::invalid_argument("hs_norm: negative s unsupported");
  const BoxGrid& g = u.box();
  auto spec = dft3(u.samples, g.n);
  HsResult res;
  res.value = std::sqrt(spectral_sum(spec, nullptr, g.n, g.half_width, s));
  res.boundary_ok = boundary_small(u, boundary_tol);
  return res;
}

double hs_norm_radial(const RadialGrid& g, const std::vector<double>& values,
                      double s, double k_max, int nk) {
  RadialInterpolant interp(g, values);
  double acc = 0.0;
  double dk = k_max / nk;
  for (int q = 0; q < nk; ++q) {
    double k = (q + 0.5) * dk;
    double integral = integrate_1d(
        [&](double r) { return r * interp(r) * std::sin(k * r); }, 0.0,
        g.r_max, 1e-12);
    double uhat = std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI / k * integral;
    acc += std::pow(1.0 + k * k, s) * uhat * uhat * 4.0 * M_PI * k * k * dk;
  }
  return std::sqrt(acc);
}

namespace {

// window values psi_j(2^j x) on the fixed shell box; identical for all j >= 1
struct ShellWindows {
  std::vector<double> w0, wj;
  int n = 0;
  double L = 0.0;
};

const ShellWindows& shell_windows(const WeightedNormSpec& spec,
                                  const DyadicPartition& part) {
  static std::map<std::pair<int, double>, ShellWindows> cache;
  auto key = std::make_pair(spec.shell_n, spec.shell_half_width);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ShellWindows sw;
  sw.n = spec.shell_n;
  sw.L = spec.shell_half_width;
  BoxGrid g(sw.L, sw.n);
  sw.w0.resize(g.size());
  sw.wj.resize(g.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        double x = g.node(i), y = g.node(j), z = g.node(k);
        double r = std::sqrt(x * x + y * y + z * z);
        sw.w0[g.index(i, j, k)] = part.shell_rescaled(0, r);
        sw.wj[g.index(i, j, k)] = part.shell_rescaled(1, r);
      }
  return cache.emplace(key, std::move(sw)).first->second;
}

// evaluators of one component of u at a physical point
using PointEval = std::function<double(double, double, double)>;

std::vector<PointEval> component_evaluators(
    const GridFunction& u, std::vector<std::shared_ptr<RadialInterpolant>>& keep,
    std::vector<std::shared_ptr<BoxInterpolant>>& keep_box) {
  std::vector<PointEval> evals;
  if (u.on_radial()) {
    const RadialGrid& g = u.radial();
    if (u.rank == Rank::scalar) {
      auto ri = std::make_shared<RadialInterpolant>(g, u.samples, Parity::even);
      keep.push_back(ri);
      evals.push_back([ri](double x, double y, double z) {
        return (*ri)(std::sqrt(x * x + y * y + z * z));
      });
    } else {
      auto ri = std::make_shared<RadialInterpolant>(g, u.samples, Parity::odd);
      keep.push_back(ri);
      for (int c = 0; c < 3; ++c)
        evals.push_back([ri, c](double x, double y, double z) {
          double xc[3] = {x, y, z};
          double r = std::sqrt(x * x + y * y + z * z);
          if (r == 0.0) return 0.0;
          return (*ri)(r)*xc[c] / r;
        });
    }
  } else {
    for (int c = 0; c < u.ncomponents(); ++c) {
      auto bi = std::make_shared<BoxInterpolant>(u, c);
      keep_box.push_back(bi);
      evals.push_back(
          [bi](double x, double y, double z) { return (*bi)(x, y, z); });
    }
  }
  return evals;
}

// fill the shell-box samples of (window^pow * u_c)(2^j x)
void fill_shell(std::vector<double>& out, const ShellWindows& sw,
                const PointEval& eval, int j, int window_pow) {
  BoxGrid g(sw.L, sw.n);
  const std::vector<double>& win = (j == 0) ? sw.w0 : sw.wj;
  double scale = std::exp2(double(j));
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int jj = 0; jj < g.n; ++jj)
      for (int k = 0; k < g.n; ++k, ++idx) {
        double w = win[idx];
        if (window_pow == 2) w *= w;
        if (w == 0.0) {
          out[idx] = 0.0;
          continue;
        }
        double x = g.node(i), y = g.node(jj), z = g.node(k);
        out[idx] = w * eval(scale * x, scale * y, scale * z);
      }
}

}  // namespace

NormBreakdown weighted_norm(const GridFunction& u, const WeightedNormSpec& spec,
                            const DyadicPartition& part) {
  spec.validate();
  if (!u.on_radial() && u.rank != Rank::scalar && u.rank != Rank::vector3)
    throw std::invalid_argument("weighted_norm: unsupported rank");
  const ShellWindows& sw = shell_windows(spec, part);
  std::vector<std::shared_ptr<RadialInterpolant>> keep;
  std::vector<std::shared_ptr<BoxInterpolant>> keep_box;
  auto evals = component_evaluators(u, keep, keep_box);

  int jmax = std::min(spec.j_max, part.j_max());
  NormBreakdown out;
  out.shells.assign(std::size_t(jmax) + 1, 0.0);
  std::vector<double> buf(sw.w0.size());
  for (int j = 0; j <= jmax; ++j) {
    double contrib = 0.0;
    for (auto& ev : evals) {
      fill_shell(buf, sw, ev, j, 1);
      auto spec_buf = dft3(buf, sw.n);
      contrib += spectral_sum(spec_buf, nullptr, sw.n, sw.L, spec.s);
    }
    double weight = std::exp2((1.5 + spec.delta) * 2.0 * j);
    out.shells[std::size_t(j)] = weight * contrib;
    out.total += out.shells[std::size_t(j)];
  }
  // divergence: sustained geometric growth of the outer shell terms
  if (jmax >= 3 && out.total > 0.0) {
    std::size_t last = out.shells.size() - 1;
    double floor_t = 1e-14 * out.total;
    bool growing = out.shells[last] > floor_t;
    for (std::size_t j = last - 2; j <= last && growing; ++j)
      growing = out.shells[j] > 1.05 * out.shells[j - 1];
    if (growing) out.truncated = true;
    // otherwise sum the remaining shells geometrically when the tail
    // ratio has stabilized below 1
    if (!growing && out.shells[last] > floor_t &&
        out.shells[last - 1] > 0.0 && out.shells[last - 2] > 0.0) {
      double q1 = out.shells[last] / out.shells[last - 1];
      double q0 = out.shells[last - 1] / out.shells[last - 2];
      if (q1 < 0.95 && std::abs(q1 - q0) < 0.05)
        out.tail = out.shells[last] * q1 / (1.0 - q1);
    }
  }
  return out;
}

double weighted_norm_integer(const GridFunction& u, int m, double delta) {
  if (u.rank != Rank::scalar)
    throw std::invalid_argument("weighted_norm_integer: scalar fields only");
  if (m < 0 || m > 4)
    throw std::invalid_argument("weighted_norm_integer: m in [0,4]");
  if (u.on_radial()) {
    if (m > 2)
      throw std::invalid_argument(
          "weighted_norm_integer: radial path supports m <= 2");
    const RadialGrid& g = u.radial();
    GridFunction d1 = derivative(u, 0, Parity::even);
    GridFunction d2 = (m >= 2) ? derivative(d1, 0, Parity::odd) : GridFunction();
    std::vector<double> integrand(std::size_t(g.n), 0.0);
    for (int i = 0; i < g.n; ++i) {
      double r = g.node(i);
      double w0 = std::pow(1.0 + r, delta);
      double t = w0 * w0 * u.samples[std::size_t(i)] * u.samples[std::size_t(i)];
      if (m >= 1) {
        double w1 = std::pow(1.0 + r, delta + 1.0);
        t += w1 * w1 * d1.samples[std::size_t(i)] * d1.samples[std::size_t(i)];
      }
      if (m >= 2) {
        double w2 = std::pow(1.0 + r, delta + 2.0);
        double upp = d2.samples[std::size_t(i)];
        double uor = d1.samples[std::size_t(i)] / r;
        // Frobenius norm of the Hessian of a radial function
        t += w2 * w2 * (upp * upp + 2.0 * uor * uor);
      }
      integrand[std::size_t(i)] = t * r * r;
    }
    return std::sqrt(4.0 * M_PI * integrate(g, integrand));
  }
  const BoxGrid& g = u.box();
  double acc = 0.0;
  // enumerate multi-indices (a0,a1,a2) with |a| <= m
  for (int a0 = 0; a0 <= m; ++a0)
    for (int a1 = 0; a0 + a1 <= m; ++a1)
      for (int a2 = 0; a0 + a1 + a2 <= m; ++a2) {
        int order = a0 + a1 + a2;
        GridFunction d = u;
        for (int k = 0; k < a0; ++k) d = derivative(d, 0);
        for (int k = 0; k < a1; ++k) d = derivative(d, 1);
        for (int k = 0; k < a2; ++k) d = derivative(d, 2);
        // multiplicity |a|! / (a0! a1! a2!)
        auto fact = [](int x) {
          double r = 1.0;
          for (int i = 2; i <= x; ++i) r *= i;
          return r;
        };
        double mult = fact(order) / (fact(a0) * fact(a1) * fact(a2));
        double term = 0.0;
        std::size_t idx = 0;
        for (int i = 0; i < g.n; ++i)
          for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k, ++idx) {
              double x = g.node(i), y = g.node(j), z = g.node(k);
              double r = std::sqrt(x * x + y * y + z * z);
              double w = std::pow(1.0 + r, delta + order);
              term += w * w * d.samples[idx] * d.samples[idx];
            }
        acc += mult * term * g.h() * g.h() * g.h();
      }
  return std::sqrt(acc);
}

double l2_delta_norm(const GridFunction& u, double delta) {
  if (u.on_radial()) {
    const RadialGrid& g = u.radial();
    int nc = u.ncomponents();
    (void)nc;
    std::vector<double> integrand(std::size_t(g.n));
    for (int i = 0; i < g.n; ++i) {
      double r = g.node(i);
      double w = std::pow(1.0 + r, delta);
      double v = u.samples[std::size_t(i)];
      integrand[std::size_t(i)] = w * w * v * v * r * r;
    }
    return std::sqrt(4.0 * M_PI * integrate(g, integrand));
  }
  const BoxGrid& g = u.box();
  double acc = 0.0;
  for (int c = 0; c < u.ncomponents(); ++c) {
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k, ++idx) {
          double x = g.node(i), y = g.node(j), z = g.node(k);
          double r = std::sqrt(x * x + y * y + z * z);
          double w = std::pow(1.0 + r, delta);
          double v = u.at(idx, c);
          acc += w * w * v * v;
        }
  }
  return std::sqrt(acc * g.h() * g.h() * g.h());
}

double weighted_sup_norm(const GridFunction& u, double beta, int m) {
  if (m < 0 || m > 1)
    throw std::invalid_argument("weighted_sup_norm: m in {0,1}");
  if (u.rank != Rank::scalar)
    throw std::invalid_argument("weighted_sup_norm: scalar fields only");
  auto weighted_max = [&](const GridFunction& f, double b) {
    double best = 0.0;
    if (f.on_radial()) {
      const RadialGrid& g = f.radial();
      for (int i = 0; i < g.n; ++i)
        best = std::max(best, std::pow(1.0 + g.node(i), b) *
                                  std::abs(f.samples[std::size_t(i)]));
    } else {
      const BoxGrid& g = f.box();
      std::size_t idx = 0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
          for (int k = 0; k < g.n; ++k, ++idx) {
            double x = g.node(i), y = g.node(j), z = g.node(k);
            double r = std::sqrt(x * x + y * y + z * z);
            best = std::max(best,
                            std::pow(1.0 + r, b) * std::abs(f.samples[idx]));
          }
    }
    return best;
  };
  double total = weighted_max(u, beta);
  if (m == 1) {
    if (u.on_radial()) {
      GridFunction d = derivative(u, 0, Parity::even);
      total += 3.0 * weighted_max(d, beta + 1.0);
    } else {
      for (int ax = 0; ax < 3; ++ax)
        total += weighted_max(derivative(u, ax), beta + 1.0);
    }
  }
  return total;
}

InnerProductResult weighted_inner_product(const GridFunction& u,
                                          const GridFunction& v,
                                          const WeightedNormSpec& spec,
                                          const DyadicPartition& part) {
  spec.validate();
  if (!same_geometry(u.geom, v.geom) || u.rank != v.rank)
    throw std::invalid_argument("weighted_inner_product: mismatched fields");
  const ShellWindows& sw = shell_windows(spec, part);
  std::vector<std::shared_ptr<RadialInterpolant>> keep;
  std::vector<std::shared_ptr<BoxInterpolant>> keep_box;
  auto eu = component_evaluators(u, keep, keep_box);
  auto ev = component_evaluators(v, keep, keep_box);

  int jmax = std::min(spec.j_max, part.j_max());
  double total = 0.0, last = 0.0;
  std::vector<double> bu(sw.w0.size()), bv(sw.w0.size());
  for (int j = 0; j <= jmax; ++j) {
    double pair = 0.0;
    for (std::size_t c = 0; c < eu.size(); ++c) {
      fill_shell(bu, sw, eu[c], j, 1);
      fill_shell(bv, sw, ev[c], j, 1);
      auto su = dft3(bu, sw.n);
      auto sv = dft3(bv, sw.n);
      pair += spectral_sum(su, &sv, sw.n, sw.L, spec.s);
    }
    double weight = std::exp2((1.5 + spec.delta) * 2.0 * j);
    last = weight * pair;
    total += last;
  }
  InnerProductResult res;
  res.value = total;
  if (std::abs(total) > 0.0 && std::abs(last) > spec.tail_tol * std::abs(total))
    res.truncated = true;
  return res;
}

}  // namespace epm
