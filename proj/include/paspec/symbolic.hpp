#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace paspec {

/// Finite sum of terms c * y^{a/2} * ln(y)^b in one variable y > 0.
class SymbolicFn {
 public:
  struct Term {
    long double coeff = 0.0L;
    int half_power = 0;
    int log_power = 0;
  };

  SymbolicFn() = default;
  static SymbolicFn constant(long double c);

  /// Adds c * y^{a/2} ln^b y, merging with an existing (a, b) term.
  void add(long double c, int half_power, int log_power);
  std::vector<Term> terms() const;
  std::size_t size() const noexcept { return terms_.size(); }

  /// Multiply by y^{a/2}.
  SymbolicFn times_power(int half_power) const;
  /// An antiderivative in y (constant of integration zero).
  SymbolicFn antiderivative() const;
  /// y -> integral of this function from `lower` to y.
  SymbolicFn integral_from(long double lower) const;
  /// Compensated evaluation at y > 0.
  long double evaluate(long double y) const;

 private:
  std::map<std::pair<int, int>, long double> terms_;
};

/// psi(D, eps, m) = (2m)^{-(t-1)} * integral over eps <= y_1 <= ... <= y_t <= 1
/// of prod_i y_i^{-d_i/2}, evaluated innermost-out in closed form.
long double psi(std::span<const int> degrees, double epsilon, std::int64_t m);

}  // namespace paspec
