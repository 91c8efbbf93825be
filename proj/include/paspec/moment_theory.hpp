#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "paspec/exact_prob.hpp"
#include "paspec/ordered_graph.hpp"
#include "paspec/symbolic.hpp"

namespace paspec {

inline constexpr int kMaxTreeVertices = 10;
/// Largest tree size returned as a materialized list.
inline constexpr int kMaxListedTreeVertices = 8;
/// Largest moment order accepted by limit_moment_C.
inline constexpr int kMaxMomentOrder = 12;

/// Calls `visit` on each of the t^{t-2} labeled trees on 1..t (Pruefer order).
/// t = 1 gives the edgeless singleton, t = 2 the single edge.
void for_each_labeled_tree(int t, const std::function<void(const OrderedGraph&)>& visit);
std::vector<OrderedGraph> enumerate_labeled_trees(int t);

struct MoonCount {
  BigInt value;
  bool valid = true;
};

/// Number of labeled trees with degree sequence D: (t-2)! / prod (d_i - 1)!.
MoonCount moon_count(std::span<const int> degrees);

/// Closed k-walks whose edge union is all of H (edges as distinct objects),
/// by inclusion-exclusion over omitted edge sets.
BigInt walk_count_M(const OrderedGraph& h, int k);

BigInt rising(std::int64_t m, int r);
BigInt falling(std::int64_t m, int r);
/// prod_v rising(m, d_in(v)) * falling(m, d_out(v)).
BigInt phi(const OrderedGraph& h, std::int64_t m);

/// Limiting k-th moment C(k, eps, m) of the truncated graph. Odd k gives 0,
/// k = 0 gives 1; otherwise a sum over all labeled trees on 2..k/2+1 vertices.
double limit_moment_C(int k, double epsilon, std::int64_t m);

struct MomentTable {
  double epsilon = 0.0;
  std::int64_t m = 0;
  int K = 0;
  /// moments[k] = C(k, eps, m) for 0 <= k <= K.
  std::vector<double> moments;
};

MomentTable build_moment_table(int K, double epsilon, std::int64_t m);

struct HamburgerReport {
  bool psd = true;
  double min_eigenvalue = 0.0;
  double norm = 0.0;
};

/// Hankel matrix [C_{r+s}]_{0 <= r,s <= K/2} is PSD up to -1e-9 * ||H||.
HamburgerReport check_hamburger(const MomentTable& table, int K);
HamburgerReport check_hamburger(std::span<const double> moments, int K);

struct CarlemanReport {
  /// ratios[j-1] = C_{2j}^{1/(2j)} / (2j), j = 1..K/2.
  std::vector<double> ratios;
  double sup = 0.0;
  bool nonincreasing = true;
};

CarlemanReport carleman_report(const MomentTable& table, int K);

struct MagnitudeExponents {
  /// Number of degree-one vertices.
  int f = 0;
  /// Number of degree-two vertices.
  int g = 0;
  double f_half() const noexcept { return f / 2.0; }
};

MagnitudeExponents magnitude_exponents(const OrderedGraph& h);

void write_moment_table_json(std::ostream& out, const MomentTable& table);
MomentTable read_moment_table_json(std::istream& in);

}  // namespace paspec
