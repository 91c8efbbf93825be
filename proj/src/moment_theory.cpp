#include "paspec/moment_theory.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include "json.hpp"

namespace paspec {

void for_each_labeled_tree(int t, const std::function<void(const OrderedGraph&)>& visit) {
  if (t < 1) throw std::invalid_argument("for_each_labeled_tree: t must be >= 1");
  if (t > kMaxTreeVertices) {
    throw CapExceeded("for_each_labeled_tree: t = " + std::to_string(t) + " exceeds the cap of " +
                      std::to_string(kMaxTreeVertices));
  }
  if (t == 1) {
    visit(OrderedGraph(1, {}));
    return;
  }
  if (t == 2) {
    visit(OrderedGraph(2, {{1, 2}}));
    return;
  }
  const int len = t - 2;
  std::vector<int> code(static_cast<std::size_t>(len), 1);
  std::vector<int> degree(static_cast<std::size_t>(t) + 1);
  std::vector<std::pair<int, int>> edges;
  while (true) {
    std::fill(degree.begin(), degree.end(), 1);
    for (int x : code) ++degree[static_cast<std::size_t>(x)];
    edges.clear();
    for (int x : code) {
      int leaf = 1;
      while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
      edges.emplace_back(leaf, x);
      --degree[static_cast<std::size_t>(leaf)];
      --degree[static_cast<std::size_t>(x)];
    }
    int u = 0;
    for (int v = 1; v <= t; ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) {
        if (u == 0) {
          u = v;
        } else {
          edges.emplace_back(u, v);
          break;
        }
      }
    }
    visit(OrderedGraph(t, edges));

    int pos = len - 1;
    while (pos >= 0 && code[static_cast<std::size_t>(pos)] == t) {
      code[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++code[static_cast<std::size_t>(pos)];
  }
}

std::vector<OrderedGraph> enumerate_labeled_trees(int t) {
  if (t > kMaxListedTreeVertices) {
    throw CapExceeded("enumerate_labeled_trees: t = " + std::to_string(t) +
                      " exceeds the listing cap of " + std::to_string(kMaxListedTreeVertices) +
                      "; use for_each_labeled_tree");
  }
  std::vector<OrderedGraph> out;
  for_each_labeled_tree(t, [&out](const OrderedGraph& tree) { out.push_back(tree); });
  return out;
}

MoonCount moon_count(std::span<const int> degrees) {
  MoonCount result;
  const auto t = static_cast<int>(degrees.size());
  long sum = 0;
  for (int d : degrees) {
    if (d < 1) {
      result.valid = false;
      return result;
    }
    sum += d;
  }
  if (t < 2 || sum != 2L * (t - 1)) {
    result.valid = false;
    return result;
  }
  BigInt value = 1;
  for (int j = 2; j <= t - 2; ++j) value *= j;
  for (int d : degrees) {
    for (int j = 2; j <= d - 1; ++j) value /= j;
  }
  result.value = value;
  return result;
}

namespace {

struct Overflow {};

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw Overflow{};
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw Overflow{};
  return r;
}

template <class T, class Add, class Mul>
T trace_power(const std::vector<std::vector<T>>& a, int k, Add add, Mul mul) {
  const auto n = a.size();
  if (k == 0) return T(static_cast<std::int64_t>(n));
  std::vector<std::vector<T>> p = a;
  std::vector<std::vector<T>> next(n, std::vector<T>(n, T(0)));
  for (int s = 1; s < k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        T acc(0);
        for (std::size_t l = 0; l < n; ++l) {
          if (p[i][l] != 0 && a[l][j] != 0) acc = add(acc, mul(p[i][l], a[l][j]));
        }
        next[i][j] = acc;
      }
    }
    std::swap(p, next);
  }
  T tr(0);
  for (std::size_t i = 0; i < n; ++i) tr = add(tr, p[i][i]);
  return tr;
}

template <class T, class Add, class Mul>
T inclusion_exclusion(const OrderedGraph& h, int k, Add add, Mul mul) {
  const int e = h.edge_count();
  T total(0);
  T negated(0);
  const auto n = static_cast<std::size_t>(h.t);
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    std::vector<std::vector<T>> a(n, std::vector<T>(n, T(0)));
    for (int idx = 0; idx < e; ++idx) {
      if (mask & (1u << idx)) continue;
      const auto [i, j] = h.edges[static_cast<std::size_t>(idx)];
      const auto r = static_cast<std::size_t>(i - 1);
      const auto c = static_cast<std::size_t>(j - 1);
      a[r][c] = add(a[r][c], T(1));
      if (r != c) a[c][r] = add(a[c][r], T(1));
    }
    const T tr = trace_power(a, k, add, mul);
    if (__builtin_popcount(mask) % 2 == 0) {
      total = add(total, tr);
    } else {
      negated = add(negated, tr);
    }
  }
  return total - negated;
}

}  // namespace

BigInt walk_count_M(const OrderedGraph& h, int k) {
  if (k < 0) throw std::invalid_argument("walk_count_M: k must be >= 0");
  if (h.edge_count() > 20) throw CapExceeded("walk_count_M: more than 20 edges");
  if (h.edge_count() > k) return 0;
  if (h.is_tree() && k % 2 == 1) return 0;
  try {
    return BigInt(inclusion_exclusion<std::int64_t>(h, k, checked_add, checked_mul));
  } catch (const Overflow&) {
    return inclusion_exclusion<BigInt>(
        h, k, [](const BigInt& x, const BigInt& y) { return BigInt(x + y); },
        [](const BigInt& x, const BigInt& y) { return BigInt(x * y); });
  }
}

BigInt rising(std::int64_t m, int r) {
  BigInt v = 1;
  for (int j = 0; j < r; ++j) v *= m + j;
  return v;
}

BigInt falling(std::int64_t m, int r) {
  if (r > m) return 0;
  BigInt v = 1;
  for (int j = 0; j < r; ++j) v *= m - j;
  return v;
}

BigInt phi(const OrderedGraph& h, std::int64_t m) {
  const auto in = h.in_degrees();
  const auto out = h.out_degrees();
  BigInt v = 1;
  for (std::size_t i = 0; i < in.size(); ++i) {
    v *= rising(m, in[i]) * falling(m, out[i]);
    if (v == 0) break;
  }
  return v;
}

namespace {

std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> children;
  for (int w : adj[static_cast<std::size_t>(v)]) {
    if (w != parent) children.push_back(rooted_code(adj, w, v));
  }
  std::sort(children.begin(), children.end());
  std::string code = "(";
  for (const auto& c : children) code += c;
  return code + ")";
}

// Unlabeled shape of a tree: the smallest rooted code over all roots.
std::string tree_shape(const OrderedGraph& tree) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(tree.t) + 1);
  for (auto [i, j] : tree.edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::string best;
  for (int r = 1; r <= tree.t; ++r) {
    auto code = rooted_code(adj, r, 0);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace

double limit_moment_C(int k, double epsilon, std::int64_t m) {
  if (k < 0) throw std::invalid_argument("limit_moment_C: k must be >= 0");
  if (k > kMaxMomentOrder) {
    throw CapExceeded("limit_moment_C: k = " + std::to_string(k) + " exceeds the cap of " +
                      std::to_string(kMaxMomentOrder));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("limit_moment_C: epsilon must lie in (0, 1)");
  }
  if (m < 1) throw std::invalid_argument("limit_moment_C: m must be >= 1");
  if (k % 2 == 1) return 0.0;
  if (k == 0) return 1.0;

  std::map<std::vector<int>, long double> psi_memo;
  std::map<std::string, long double> walk_memo;
  long double sum = 0.0L;
  for (int t = 2; t <= k / 2 + 1; ++t) {
    for_each_labeled_tree(t, [&](const OrderedGraph& tree) {
      const BigInt weight = phi(tree, m);
      if (weight == 0) return;
      const auto shape = tree_shape(tree);
      auto walks = walk_memo.find(shape);
      if (walks == walk_memo.end()) {
        walks = walk_memo.emplace(shape, walk_count_M(tree, k).convert_to<long double>()).first;
      }
      const auto d = tree.degree_sequence();
      auto integral = psi_memo.find(d);
      if (integral == psi_memo.end()) integral = psi_memo.emplace(d, psi(d, epsilon, m)).first;
      sum += weight.convert_to<long double>() * walks->second * integral->second;
    });
  }
  return static_cast<double>(sum / (1.0L - static_cast<long double>(epsilon)));
}

MomentTable build_moment_table(int K, double epsilon, std::int64_t m) {
  if (K < 0) throw std::invalid_argument("build_moment_table: K must be >= 0");
  MomentTable table;
  table.epsilon = epsilon;
  table.m = m;
  table.K = K;
  for (int k = 0; k <= K; ++k) table.moments.push_back(limit_moment_C(k, epsilon, m));
  return table;
}

HamburgerReport check_hamburger(std::span<const double> moments, int K) {
  if (K < 0 || static_cast<std::size_t>(K) >= moments.size() + (K % 2)) {
    throw std::invalid_argument("check_hamburger: table shorter than K");
  }
  const int half = K / 2;
  Eigen::MatrixXd h(half + 1, half + 1);
  for (int r = 0; r <= half; ++r) {
    for (int s = 0; s <= half; ++s) h(r, s) = moments[static_cast<std::size_t>(r + s)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  HamburgerReport report;
  report.min_eigenvalue = ev.minCoeff();
  report.norm = ev.cwiseAbs().maxCoeff();
  report.psd = report.min_eigenvalue >= -1e-9 * report.norm;
  return report;
}

HamburgerReport check_hamburger(const MomentTable& table, int K) {
  return check_hamburger(std::span<const double>(table.moments), K);
}

CarlemanReport carleman_report(const MomentTable& table, int K) {
  if (K < 0 || static_cast<std::size_t>(K) >= table.moments.size() + (K % 2)) {
    throw std::invalid_argument("carleman_report: table shorter than K");
  }
  CarlemanReport report;
  for (int j = 1; 2 * j <= K; ++j) {
    const double c = table.moments[static_cast<std::size_t>(2 * j)];
    const double ratio = std::pow(std::max(c, 0.0), 1.0 / (2.0 * j)) / (2.0 * j);
    if (!report.ratios.empty() && ratio > report.ratios.back()) report.nonincreasing = false;
    report.ratios.push_back(ratio);
    report.sup = std::max(report.sup, ratio);
  }
  return report;
}

MagnitudeExponents magnitude_exponents(const OrderedGraph& h) {
  MagnitudeExponents out;
  for (int d : h.degree_sequence()) {
    if (d == 1) ++out.f;
    if (d == 2) ++out.g;
  }
  return out;
}

void write_moment_table_json(std::ostream& out, const MomentTable& table) {
  nlohmann::json j;
  j["epsilon"] = table.epsilon;
  j["m"] = table.m;
  j["K"] = table.K;
  j["moments"] = table.moments;
  out << j.dump(2) << '\n';
}

MomentTable read_moment_table_json(std::istream& in) {
  const auto j = nlohmann::json::parse(in);
  MomentTable table;
  table.epsilon = j.at("epsilon").get<double>();
  table.m = j.at("m").get<std::int64_t>();
  table.K = j.at("K").get<int>();
  table.moments = j.at("moments").get<std::vector<double>>();
  if (table.moments.size() != static_cast<std::size_t>(table.K) + 1) {
    throw std::invalid_argument("moment table: expected K + 1 moments");
  }
  return table;
}

}  // namespace paspec
