#include "paspec/symbolic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace paspec {

SymbolicFn SymbolicFn::constant(long double c) {
  SymbolicFn f;
  f.add(c, 0, 0);
  return f;
}

void SymbolicFn::add(long double c, int half_power, int log_power) {
  if (log_power < 0) throw std::invalid_argument("SymbolicFn: negative log power");
  if (c == 0.0L) return;
  auto [it, inserted] = terms_.try_emplace({half_power, log_power}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0L) terms_.erase(it);
  }
}

std::vector<SymbolicFn::Term> SymbolicFn::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.push_back({c, key.first, key.second});
  return out;
}

SymbolicFn SymbolicFn::times_power(int half_power) const {
  SymbolicFn out;
  for (const auto& [key, c] : terms_) out.add(c, key.first + half_power, key.second);
  return out;
}

SymbolicFn SymbolicFn::antiderivative() const {
  SymbolicFn out;
  for (const auto& [key, c] : terms_) {
    const auto [a, b] = key;
    if (a == -2) {
      // integral of ln^b(y) / y
      out.add(c / static_cast<long double>(b + 1), 0, b + 1);
      continue;
    }
    // integral of y^{p-1} ln^b y = y^p sum_j (-1)^j b!/(b-j)! ln^{b-j} y / p^{j+1}
    const long double p = static_cast<long double>(a + 2) / 2.0L;
    long double falling = 1.0L;
    long double p_power = p;
    for (int j = 0; j <= b; ++j) {
      const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
      out.add(c * sign * falling / p_power, a + 2, b - j);
      falling *= static_cast<long double>(b - j);
      p_power *= p;
    }
  }
  return out;
}

SymbolicFn SymbolicFn::integral_from(long double lower) const {
  SymbolicFn out = antiderivative();
  out.add(-out.evaluate(lower), 0, 0);
  return out;
}

long double SymbolicFn::evaluate(long double y) const {
  if (!(y > 0.0L)) throw std::domain_error("SymbolicFn: evaluation needs y > 0");
  const long double log_y = std::log(y);
  const long double root_y = std::sqrt(y);
  long double sum = 0.0L;
  long double compensation = 0.0L;
  for (const auto& [key, c] : terms_) {
    const auto [a, b] = key;
    long double value = c * std::pow(root_y, static_cast<long double>(a));
    if (b > 0) value *= std::pow(log_y, static_cast<long double>(b));
    // Neumaier summation
    const long double t = sum + value;
    if (std::fabs(sum) >= std::fabs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

long double psi(std::span<const int> degrees, double epsilon, std::int64_t m) {
  if (degrees.empty()) throw std::invalid_argument("psi: empty degree sequence");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("psi: epsilon must lie in (0, 1)");
  if (m < 1) throw std::invalid_argument("psi: m must be >= 1");
  long sum = 0;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("psi: degrees must be >= 1");
    sum += d;
  }
  const auto t = static_cast<long>(degrees.size());
  if (sum != 2 * (t - 1)) {
    throw std::invalid_argument("psi: degree sum " + std::to_string(sum) + " != 2(t-1) = " +
                                std::to_string(2 * (t - 1)));
  }
  const long double eps = epsilon;
  SymbolicFn f = SymbolicFn::constant(1.0L);
  for (int d : degrees) f = f.times_power(-d).integral_from(eps);
  return f.evaluate(1.0L) / std::pow(2.0L * static_cast<long double>(m), static_cast<long double>(t - 1));
}

}  // namespace paspec
