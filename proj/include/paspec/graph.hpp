#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace paspec {

using Vertex = std::int64_t;

struct GraphConfig {
  std::int64_t m = 1;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
};

/// Seed used for replicate `r` of a run seeded with `base_seed`.
///
/// Replicates are independent streams: replicate r is generated exactly as a
/// single run with seed base_seed + r (wrapping modulo 2^64).
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t r) noexcept {
  return base_seed + r;
}

/// Undirected edge with u <= v. A loop has u == v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with loops on the labels [vertex_offset, n].
///
/// Edges are kept in birth order for generated graphs, so edge e of a
/// collapsed G_{m,n} was added while vertex e/m + 1 was being born.
/// `m` and `seed` are provenance metadata (0 for hand-built graphs).
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(Vertex n, Vertex vertex_offset, std::vector<Edge> edges,
             std::int64_t m = 0, std::uint64_t seed = 0);

  /// Hand-built graph on [1, n]; pairs may be given in any order.
  static MultiGraph from_pairs(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  Vertex n() const noexcept { return n_; }
  Vertex vertex_offset() const noexcept { return offset_; }
  /// Number of live vertices, n - vertex_offset + 1.
  std::int64_t vertex_count() const noexcept { return n_ - offset_ + 1; }
  bool contains(Vertex v) const noexcept { return v >= offset_ && v <= n_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::int64_t m() const noexcept { return m_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Degree convention: a loop contributes 2.
  std::vector<std::int64_t> degree_vector() const;
  /// Adjacency-diagonal convention: number of loops at each vertex (a loop counts once).
  std::vector<std::int64_t> loop_vector() const;
  std::int64_t loop_count() const noexcept;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  Vertex n_ = 0;
  Vertex offset_ = 1;
  std::vector<Edge> edges_;
  std::int64_t m_ = 0;
  std::uint64_t seed_ = 0;
};

struct TruncationSpec {
  double epsilon = 0.1;
};

/// Number of deleted vertices, ceil(epsilon * n). Products within 1e-12
/// relative of an integer are treated as that integer.
Vertex truncation_cut(double epsilon, Vertex n);

/// Sample G_{1,n}.
///
/// Sampling mechanism: a flat array holds both endpoints of every existing
/// edge, so vertex i appears d(i) times. At step t a uniform draw is taken
/// among the 2(t-1) stored endpoints plus one phantom slot standing for the
/// newborn vertex t itself. Landing on the phantom slot creates a loop.
/// This gives P[X_t = i] = d(i)/(2t-1) for i < t and 1/(2t-1) for i = t in
/// O(1) per step. Step 1 has only the phantom slot, so G_{1,1} is a loop.
MultiGraph generate_g1(Vertex n, std::uint64_t seed);

/// Merge vertices (a-1)m+1 .. am of a graph on [1, m*n] into vertex a.
/// Edge order and multiplicities are preserved; edges inside a group become loops.
MultiGraph collapse(const MultiGraph& g1, std::int64_t m);

/// G_{m,n} = collapse(generate_g1(m*n, seed), m).
MultiGraph generate(const GraphConfig& cfg);

/// Delete vertices 1..ceil(epsilon n) and their edges; labels are kept.
MultiGraph truncate(const MultiGraph& g, const TruncationSpec& spec);
/// Delete every live vertex with label <= cut. cut below the current offset is a no-op.
MultiGraph truncate_at(const MultiGraph& g, Vertex cut);

struct VertexDegree {
  Vertex vertex = 0;
  std::int64_t degree = 0;
  friend bool operator==(const VertexDegree&, const VertexDegree&) = default;
};

std::vector<VertexDegree> degrees(const MultiGraph& g);

struct TopDegrees {
  /// Descending; ties broken by the smaller vertex label.
  std::vector<VertexDegree> entries;
  /// Set when more entries were requested than the graph has vertices.
  bool truncated = false;
};

TopDegrees top_degrees(const MultiGraph& g, std::size_t k);

/// Replays the birth order of a collapsed G_{m,n}: edge e must join vertex
/// e/m + 1 to a vertex no larger than it. Returns false on the first violation.
bool check_birth_order(const MultiGraph& g, std::int64_t m);

// Edge-list text format:
//   line 1:  pa <m> <n> <seed> <vertex_offset>
//   then one "u v" line per edge (loops as "u u"), multiplicity by repetition.
void write_edge_list(std::ostream& out, const MultiGraph& g);
std::string to_edge_list(const MultiGraph& g);
MultiGraph read_edge_list(std::istream& in);
MultiGraph parse_edge_list(const std::string& text);

}  // namespace paspec
