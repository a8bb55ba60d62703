#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace csf {

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Solves a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i with indices taken mod n.
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                                             const std::vector<double>& c, const std::vector<double>& d);

// Adaptive Gauss-Kronrod on [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, double relTol = 1e-13,
                 unsigned maxDepth = 18);

// Root of f on a bracket with f(lo), f(hi) of opposite sign.
double find_root(const std::function<double(double)>& f, double lo, double hi, double xTol = 0.0,
                 int maxIter = 200);

std::vector<double> linspace(double lo, double hi, std::size_t n);

// Interior grid: n points a_k = lo + (k+1)(hi-lo)/(n+1).
std::vector<double> open_grid(double lo, double hi, std::size_t n);

double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq);

}
