#include "epm/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace epm {

namespace {
double ramp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}

DyadicPartition::DyadicPartition(int j_max) : j_max_(j_max) {
  if (j_max < 2) throw std::invalid_argument("DyadicPartition: j_max >= 2");
}

double DyadicPartition::cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double a = ramp(2.0 - r);
  double b = ramp(r - 1.0);
  return a / (a + b);
}

double DyadicPartition::shell(int j, double r) const {
  if (j == 0) return cutoff(r);
  double outer = cutoff(r / std::exp2(double(j)));
  double inner = cutoff(r / std::exp2(double(j - 2)));
  return outer - inner;
}

double DyadicPartition::shell_rescaled(int j, double r_scaled) const {
  if (j == 0) return cutoff(r_scaled);
  // psi_j(2^j x) = chi(|x|) - chi(4 |x|)
  return cutoff(r_scaled) - cutoff(4.0 * r_scaled);
}

}  // namespace epm
