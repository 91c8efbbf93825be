#include "paspec/ordered_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace paspec {

OrderedGraph::OrderedGraph(int t, std::vector<std::pair<int, int>> edge_list) : t(t), edges(std::move(edge_list)) {
  if (t < 0) throw std::invalid_argument("OrderedGraph: negative vertex count");
  for (auto& [i, j] : edges) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > t) {
      throw std::invalid_argument("OrderedGraph: edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") outside 1.." + std::to_string(t));
    }
  }
  std::sort(edges.begin(), edges.end());
}

std::vector<int> OrderedGraph::degree_sequence() const {
  std::vector<int> d(static_cast<std::size_t>(t), 0);
  for (auto [i, j] : edges) {
    ++d[static_cast<std::size_t>(i - 1)];
    ++d[static_cast<std::size_t>(j - 1)];
  }
  return d;
}

std::vector<int> OrderedGraph::in_degrees() const {
  std::vector<int> d(static_cast<std::size_t>(t), 0);
  for (auto [i, j] : edges) ++d[static_cast<std::size_t>(i - 1)];
  return d;
}

std::vector<int> OrderedGraph::out_degrees() const {
  std::vector<int> d(static_cast<std::size_t>(t), 0);
  for (auto [i, j] : edges) ++d[static_cast<std::size_t>(j - 1)];
  return d;
}

int OrderedGraph::multiplicity(int i, int j) const {
  if (i > j) std::swap(i, j);
  return static_cast<int>(std::count(edges.begin(), edges.end(), std::pair{i, j}));
}

bool OrderedGraph::has_loops() const {
  return std::any_of(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; });
}

bool OrderedGraph::connected() const {
  if (t <= 1) return true;
  std::vector<int> parent(static_cast<std::size_t>(t) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  int components = t;
  for (auto [i, j] : edges) {
    const int a = find(i);
    const int b = find(j);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

bool OrderedGraph::is_tree() const {
  return t >= 1 && edge_count() == t - 1 && !has_loops() && connected();
}

std::string OrderedGraph::to_string() const {
  std::ostringstream out;
  out << "t=" << t << " {";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k) out << ' ';
    out << edges[k].first << '-' << edges[k].second;
  }
  out << '}';
  return out.str();
}

}  // namespace paspec
