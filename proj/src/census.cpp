#include "paspec/census.hpp"

#include "paspec/exact_prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace paspec {

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw Overflow{};
  return r;
}

std::int64_t binomial(std::int64_t a, int mu) {
  if (mu < 0 || a < mu) return 0;
  std::int64_t r = 1;
  for (int j = 1; j <= mu; ++j) r = r * (a - mu + j) / j;
  return r;
}

std::int64_t entry(const SparseAdjacency& a, std::int64_t i, std::int64_t j) {
  const auto first = a.cols.begin() + a.row_ptr[static_cast<std::size_t>(i)];
  const auto last = a.cols.begin() + a.row_ptr[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0;
  return a.values[static_cast<std::size_t>(it - a.cols.begin())];
}

struct Check {
  int other = 0;
  int mult = 0;
};

class Counter {
 public:
  Counter(const SparseAdjacency& a, const OrderedGraph& h, const CensusWindow& window)
      : a_(a), t_(h.t), image_(static_cast<std::size_t>(h.t), -1) {
    lo_.assign(static_cast<std::size_t>(t_), 0);
    hi_.assign(static_cast<std::size_t>(t_), a.size - 1);
    const auto to_index = [&a](Vertex v) { return v - a.vertex_offset; };
    for (int v = 0; v < t_; ++v) {
      auto& lo = lo_[static_cast<std::size_t>(v)];
      auto& hi = hi_[static_cast<std::size_t>(v)];
      if (window.lo) lo = std::max(lo, to_index(*window.lo));
      if (window.hi) hi = std::min(hi, to_index(*window.hi));
      if (static_cast<std::size_t>(v) < window.per_vertex.size()) {
        lo = std::max(lo, to_index(window.per_vertex[static_cast<std::size_t>(v)].first));
        hi = std::min(hi, to_index(window.per_vertex[static_cast<std::size_t>(v)].second));
      }
    }
    plan(h);
  }

  std::int64_t run() {
    if (t_ == 0) return 1;
    return extend(0, 1);
  }

 private:
  void plan(const OrderedGraph& h) {
    const auto deg = h.degree_sequence();
    std::vector<char> placed(static_cast<std::size_t>(t_), 0);
    while (static_cast<int>(order_.size()) < t_) {
      // Prefer a vertex adjacent to one already placed; otherwise start a new
      // component at its highest-degree vertex.
      int pick = -1;
      int anchor = -1;
      for (int v = 0; v < t_ && pick < 0; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        for (int u : order_) {
          if (u != v && h.multiplicity(u + 1, v + 1) > 0) {
            pick = v;
            anchor = u;
            break;
          }
        }
      }
      if (pick < 0) {
        for (int v = 0; v < t_; ++v) {
          if (!placed[static_cast<std::size_t>(v)] &&
              (pick < 0 || deg[static_cast<std::size_t>(v)] > deg[static_cast<std::size_t>(pick)])) {
            pick = v;
          }
        }
      }
      std::vector<Check> checks;
      if (const int loops = h.multiplicity(pick + 1, pick + 1); loops > 0) checks.push_back({pick, loops});
      for (int u : order_) {
        if (const int mu = h.multiplicity(u + 1, pick + 1); mu > 0) checks.push_back({u, mu});
      }
      order_.push_back(pick);
      anchor_.push_back(anchor);
      checks_.push_back(std::move(checks));
      placed[static_cast<std::size_t>(pick)] = 1;
    }
  }

  std::int64_t weight(std::size_t step, std::int64_t x) const {
    std::int64_t w = 1;
    for (const Check& c : checks_[step]) {
      const std::int64_t y = c.other == order_[step] ? x : image_[static_cast<std::size_t>(c.other)];
      w *= binomial(entry(a_, x, y), c.mult);
      if (w == 0) return 0;
    }
    return w;
  }

  std::int64_t extend(std::size_t step, std::int64_t acc) {
    if (step == order_.size()) return acc;
    const int v = order_[step];
    std::int64_t lo = lo_[static_cast<std::size_t>(v)];
    std::int64_t hi = hi_[static_cast<std::size_t>(v)];
    for (int u = 0; u < t_; ++u) {
      const auto img = image_[static_cast<std::size_t>(u)];
      if (img < 0) continue;
      if (u < v) lo = std::max(lo, img + 1);
      if (u > v) hi = std::min(hi, img - 1);
    }
    if (lo > hi) return 0;
    std::int64_t total = 0;
    auto visit = [&](std::int64_t x) {
      const std::int64_t w = weight(step, x);
      if (w == 0) return;
      image_[static_cast<std::size_t>(v)] = x;
      const std::int64_t sub = extend(step + 1, checked_mul(acc, w));
      image_[static_cast<std::size_t>(v)] = -1;
      if (__builtin_add_overflow(total, sub, &total)) throw Overflow{};
    };
    if (const int anchor = anchor_[step]; anchor >= 0) {
      const auto row = image_[static_cast<std::size_t>(anchor)];
      const auto first = a_.cols.begin() + a_.row_ptr[static_cast<std::size_t>(row)];
      const auto last = a_.cols.begin() + a_.row_ptr[static_cast<std::size_t>(row) + 1];
      for (auto it = std::lower_bound(first, last, lo); it != last && *it <= hi; ++it) visit(*it);
    } else {
      for (std::int64_t x = lo; x <= hi; ++x) visit(x);
    }
    return total;
  }

  const SparseAdjacency& a_;
  int t_;
  std::vector<std::int64_t> image_;
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> hi_;
  std::vector<int> order_;
  std::vector<int> anchor_;
  std::vector<std::vector<Check>> checks_;
};

void require_census_cap(const OrderedGraph& h) {
  if (h.t > kCensusMaxVertices || h.edge_count() > kCensusMaxEdges) {
    throw CapExceeded("count_ordered_subgraphs: H has " + std::to_string(h.t) + " vertices and " +
                      std::to_string(h.edge_count()) + " edges; cap is " +
                      std::to_string(kCensusMaxVertices) + " and " + std::to_string(kCensusMaxEdges));
  }
}

}  // namespace

std::int64_t count_ordered_subgraphs(const SparseAdjacency& a, const OrderedGraph& h,
                                     const CensusWindow& window) {
  require_census_cap(h);
  if (h.t > a.size) return 0;
  try {
    return Counter(a, h, window).run();
  } catch (const Overflow&) {
    throw std::overflow_error("count_ordered_subgraphs: count exceeds 64 bits");
  }
}

std::int64_t count_ordered_subgraphs(const MultiGraph& g, const OrderedGraph& h,
                                     const CensusWindow& window) {
  require_census_cap(h);
  return count_ordered_subgraphs(sparse_adjacency(g), h, window);
}

OrderedGraph path2_center_first() { return OrderedGraph(3, {{1, 2}, {1, 3}}); }
OrderedGraph path2_center_middle() { return OrderedGraph(3, {{1, 2}, {2, 3}}); }
OrderedGraph path2_center_last() { return OrderedGraph(3, {{1, 3}, {2, 3}}); }

double expected_path2_count(std::int64_t m, std::int64_t n) {
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  return md * (md + 1.0) * nd * std::log(nd) / 2.0;
}

CensusReport census_vs_theory(const OrderedGraph& h, const GraphConfig& cfg, int replicates) {
  if (replicates < 1) throw std::invalid_argument("census_vs_theory: replicates must be >= 1");
  CensusReport report;
  report.h = h;
  report.m = cfg.m;
  report.n = cfg.n;
  report.base_seed = cfg.seed;
  if (h == path2_center_first()) {
    report.formula = "path2";
    report.predicted = expected_path2_count(cfg.m, cfg.n);
  } else if (h == path2_center_middle() || h == path2_center_last()) {
    report.formula = "linear";
    report.predicted = static_cast<double>(cfg.n);
  } else {
    throw std::invalid_argument("census_vs_theory: no expectation formula for " + h.to_string());
  }
  for (int r = 0; r < replicates; ++r) {
    GraphConfig c = cfg;
    c.seed = replicate_seed(cfg.seed, static_cast<std::uint64_t>(r));
    report.counts.push_back(count_ordered_subgraphs(generate(c), h));
  }
  double sum = 0.0;
  for (auto c : report.counts) sum += static_cast<double>(c);
  report.mean = sum / replicates;
  if (replicates > 1) {
    double ss = 0.0;
    for (auto c : report.counts) ss += (static_cast<double>(c) - report.mean) * (static_cast<double>(c) - report.mean);
    report.stderr_mean = std::sqrt(ss / (replicates - 1) / replicates);
  }
  report.ratio = report.mean / report.predicted;
  return report;
}

std::vector<OrderedGraph> connected_ordered_multigraphs(int max_t, int max_e) {
  std::vector<OrderedGraph> out;
  for (int t = 1; t <= max_t; ++t) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= t; ++i) {
      for (int j = i; j <= t; ++j) pairs.emplace_back(i, j);
    }
    std::vector<std::pair<int, int>> chosen;
    auto recurse = [&](auto&& self, std::size_t from) -> void {
      if (!chosen.empty()) {
        OrderedGraph h(t, chosen);
        const auto deg = h.degree_sequence();
        if (h.connected() && std::all_of(deg.begin(), deg.end(), [](int d) { return d > 0; })) {
          out.push_back(std::move(h));
        }
      }
      if (static_cast<int>(chosen.size()) == max_e) return;
      for (std::size_t p = from; p < pairs.size(); ++p) {
        chosen.push_back(pairs[p]);
        self(self, p);
        chosen.pop_back();
      }
    };
    recurse(recurse, 0);
  }
  return out;
}

void write_census_csv(std::ostream& out, const CensusReport& report) {
  out << "H,n,m,seed,count,predicted,formula\n";
  for (std::size_t r = 0; r < report.counts.size(); ++r) {
    out << '"' << report.h.to_string() << "\"," << report.n << ',' << report.m << ','
        << replicate_seed(report.base_seed, r) << ',' << report.counts[r] << ',' << report.predicted << ',' << report.formula << '\n';
  }
}

}  // namespace paspec
