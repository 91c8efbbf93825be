#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// Nested adaptive Gauss-Kronrod over eps <= y_1 <= ... <= y_t <= 1 of
// prod y_i^{-d_i/2}, in u = ln y so every level is an exponential polynomial.
inline long double psi_quadrature(const std::vector<int>& d, double eps, std::int64_t m) {
  using GK = boost::math::quadrature::gauss_kronrod<long double, 21>;
  const long double lo = std::log(static_cast<long double>(eps));
  std::function<long double(std::size_t, long double)> inner = [&](std::size_t level, long double u) -> long double {
    // integral over y_level in [eps, e^u] of y^{-d/2} * inner(level-1, .), dy = e^u du
    auto f = [&](long double v) {
      const long double w = std::exp(v * (1.0L - d[level] / 2.0L));
      return level == 0 ? w : w * inner(level - 1, v);
    };
    return GK::integrate(f, lo, u, 2, 1e-12L);
  };
  const long double raw = inner(d.size() - 1, 0.0L);
  return raw / std::pow(2.0L * static_cast<long double>(m), static_cast<long double>(d.size() - 1));
}

}  // namespace oracle
