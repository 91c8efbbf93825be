#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace paspec {

/// Small graph on ordered vertices v_1 < ... < v_t, written 1..t.
/// Edges are a multiset of pairs (i, j) with i <= j; loops allowed.
/// Two ordered graphs are ordered-isomorphic exactly when they compare equal.
struct OrderedGraph {
  int t = 0;
  std::vector<std::pair<int, int>> edges;

  OrderedGraph() = default;
  OrderedGraph(int t, std::vector<std::pair<int, int>> edges);

  int edge_count() const noexcept { return static_cast<int>(edges.size()); }
  /// Loops count 2.
  std::vector<int> degree_sequence() const;
  /// Edges point from the larger endpoint to the smaller; a loop is both an
  /// in-edge and an out-edge of its vertex.
  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;
  /// Number of copies of edge {i, j} (either order).
  int multiplicity(int i, int j) const;
  bool has_loops() const;
  bool connected() const;
  bool is_tree() const;
  std::string to_string() const;

  friend bool operator==(const OrderedGraph&, const OrderedGraph&) = default;
  friend auto operator<=>(const OrderedGraph&, const OrderedGraph&) = default;
};

}  // namespace paspec
