#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "epm/grid.hpp"

namespace epm {

// Primitive F(r_i) = int_0^{r_i} f dr of midpoint samples on a radial grid,
// 6th-order interior stencils, degree-5 interpolation near the ends. When
// the integrand has a known parity about r = 0 the first cells use mirrored
// ghost samples instead of one-sided stencils.
std::vector<double> cumulative_integral(
    const RadialGrid& g, const std::vector<double>& f,
    std::optional<Parity> origin_parity = std::nullopt);

// int_0^{r_max} f dr with the same accuracy.
double integrate(const RadialGrid& g, const std::vector<double>& f);

// 4pi int r^2 u dr (+ optional power-law tail u ~ u_N (r/r_max)^{-p}).
double volume_integral_radial(const RadialGrid& g,
                              const std::vector<double>& u,
                              double tail_exponent = 0.0);

// h^3 sum over the box.
double volume_integral_box(const GridFunction& u);

// Adaptive Simpson on [a,b]; test-oracle quality 1D quadrature.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12, int max_depth = 48);

}  // namespace epm
