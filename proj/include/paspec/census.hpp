#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paspec/graph.hpp"
#include "paspec/ordered_graph.hpp"
#include "paspec/spectra.hpp"

namespace paspec {

inline constexpr int kCensusMaxVertices = 4;
inline constexpr int kCensusMaxEdges = 5;

/// Restricts where the vertices of H may land, by original label.
struct CensusWindow {
  /// Every image lies in [lo, hi]; unset bounds are open.
  std::optional<Vertex> lo;
  std::optional<Vertex> hi;
  /// Optional interval per H vertex (index 0 is v_1); empty means unrestricted.
  std::vector<std::pair<Vertex, Vertex>> per_vertex;
};

/// X(H, V): number of copies of H in g over increasing vertex tuples
/// x_1 < ... < x_t, where each H pair {i, j} with multiplicity mu contributes
/// binom(A_g(x_i, x_j), mu). Loops use the loop count on the diagonal.
std::int64_t count_ordered_subgraphs(const MultiGraph& g, const OrderedGraph& h,
                                     const CensusWindow& window = {});
std::int64_t count_ordered_subgraphs(const SparseAdjacency& a, const OrderedGraph& h,
                                     const CensusWindow& window = {});

/// Path with two edges and the oldest vertex in the middle: (v1,v2), (v1,v3).
OrderedGraph path2_center_first();
OrderedGraph path2_center_middle();
OrderedGraph path2_center_last();

/// m(m+1) n ln(n) / 2.
double expected_path2_count(std::int64_t m, std::int64_t n);

struct CensusReport {
  OrderedGraph h;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::int64_t> counts;
  double mean = 0.0;
  double stderr_mean = 0.0;
  /// "path2" for m(m+1) n ln n / 2, "linear" for n.
  std::string formula;
  double predicted = 0.0;
  double ratio = 0.0;
};

/// Replicate r uses seed replicate_seed(cfg.seed, r). The prediction is the
/// path formula for the center-first path and n for the other two orderings.
CensusReport census_vs_theory(const OrderedGraph& h, const GraphConfig& cfg, int replicates);

/// Connected ordered multigraphs on exactly t vertices (t <= max_t) with
/// between 1 and max_e edges, loops allowed, every vertex covered.
std::vector<OrderedGraph> connected_ordered_multigraphs(int max_t, int max_e);

void write_census_csv(std::ostream& out, const CensusReport& report);

}  // namespace paspec
