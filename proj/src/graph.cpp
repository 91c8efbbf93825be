#include "paspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "paspec/random.hpp"

namespace paspec {

MultiGraph::MultiGraph(Vertex n, Vertex vertex_offset, std::vector<Edge> edges, std::int64_t m,
                       std::uint64_t seed)
    : n_(n), offset_(vertex_offset), edges_(std::move(edges)), m_(m), seed_(seed) {
  if (n < 0 || vertex_offset < 1 || vertex_offset > n + 1) {
    throw std::invalid_argument("MultiGraph: vertex range [" + std::to_string(vertex_offset) +
                                ", " + std::to_string(n) + "] is malformed");
  }
  for (const Edge& e : edges_) {
    if (e.u > e.v || !contains(e.u) || !contains(e.v)) {
      throw std::invalid_argument("MultiGraph: edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") outside [" +
                                  std::to_string(vertex_offset) + ", " + std::to_string(n) +
                                  "] or not ordered");
    }
  }
}

MultiGraph MultiGraph::from_pairs(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b)});
  return MultiGraph(n, 1, std::move(edges));
}

std::vector<std::int64_t> MultiGraph::degree_vector() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(vertex_count()), 0);
  for (const Edge& e : edges_) {
    ++deg[static_cast<std::size_t>(e.u - offset_)];
    ++deg[static_cast<std::size_t>(e.v - offset_)];
  }
  return deg;
}

std::vector<std::int64_t> MultiGraph::loop_vector() const {
  std::vector<std::int64_t> loops(static_cast<std::size_t>(vertex_count()), 0);
  for (const Edge& e : edges_) {
    if (e.u == e.v) ++loops[static_cast<std::size_t>(e.u - offset_)];
  }
  return loops;
}

std::int64_t MultiGraph::loop_count() const noexcept {
  return std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.u == e.v; });
}

Vertex truncation_cut(double epsilon, Vertex n) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("truncation epsilon must lie in (0, 1), got " +
                                std::to_string(epsilon));
  }
  const long double product = static_cast<long double>(epsilon) * static_cast<long double>(n);
  const long double nearest = std::nearbyint(product);
  if (std::fabs(product - nearest) <= 1e-12L * std::max<long double>(1.0L, product)) {
    return static_cast<Vertex>(nearest);
  }
  return static_cast<Vertex>(std::ceil(product));
}

MultiGraph generate_g1(Vertex n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_g1: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> endpoints;
  endpoints.reserve(static_cast<std::size_t>(2 * n));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (Vertex t = 1; t <= n; ++t) {
    // 2(t-1) stored endpoints plus the phantom slot of vertex t.
    const auto slots = static_cast<std::uint64_t>(2 * t - 1);
    const auto draw = uniform_below(rng, slots);
    const Vertex target = draw + 1 == slots ? t : endpoints[draw];
    endpoints.push_back(t);
    endpoints.push_back(target);
    edges.push_back({target, t});
  }
  return MultiGraph(n, 1, std::move(edges), 1, seed);
}

MultiGraph collapse(const MultiGraph& g1, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("collapse: m must be >= 1");
  if (g1.vertex_offset() != 1 || g1.n() % m != 0) {
    throw std::invalid_argument("collapse: vertex count " + std::to_string(g1.n()) +
                                " is not a multiple of m = " + std::to_string(m));
  }
  auto group = [m](Vertex x) { return (x - 1) / m + 1; };
  std::vector<Edge> edges;
  edges.reserve(g1.edge_count());
  for (const Edge& e : g1.edges()) edges.push_back({group(e.u), group(e.v)});
  return MultiGraph(g1.n() / m, 1, std::move(edges), m * std::max<std::int64_t>(g1.m(), 1),
                    g1.seed());
}

MultiGraph generate(const GraphConfig& cfg) {
  if (cfg.m < 1) throw std::invalid_argument("generate: m must be >= 1");
  if (cfg.n < 1) throw std::invalid_argument("generate: n must be >= 1");
  return collapse(generate_g1(cfg.m * cfg.n, cfg.seed), cfg.m);
}

MultiGraph truncate_at(const MultiGraph& g, Vertex cut) {
  if (cut < g.vertex_offset()) return g;
  cut = std::min(cut, g.n());
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.u > cut) kept.push_back(e);
  }
  return MultiGraph(g.n(), cut + 1, std::move(kept), g.m(), g.seed());
}

MultiGraph truncate(const MultiGraph& g, const TruncationSpec& spec) {
  return truncate_at(g, truncation_cut(spec.epsilon, g.n()));
}

std::vector<VertexDegree> degrees(const MultiGraph& g) {
  const auto deg = g.degree_vector();
  std::vector<VertexDegree> out(deg.size());
  for (std::size_t i = 0; i < deg.size(); ++i) {
    out[i] = {g.vertex_offset() + static_cast<Vertex>(i), deg[i]};
  }
  return out;
}

TopDegrees top_degrees(const MultiGraph& g, std::size_t k) {
  auto all = degrees(g);
  TopDegrees result;
  result.truncated = k > all.size();
  const std::size_t take = std::min(k, all.size());
  auto by_degree = [](const VertexDegree& a, const VertexDegree& b) {
    return a.degree != b.degree ? a.degree > b.degree : a.vertex < b.vertex;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    by_degree);
  all.resize(take);
  result.entries = std::move(all);
  return result;
}

bool check_birth_order(const MultiGraph& g, std::int64_t m) {
  if (m < 1 || g.vertex_offset() != 1) return false;
  if (static_cast<std::int64_t>(g.edge_count()) != m * g.n()) return false;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Vertex born = static_cast<Vertex>(e) / m + 1;
    const Edge& edge = g.edges()[e];
    if (edge.v != born || edge.u > born) return false;
  }
  return true;
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
  out << "pa " << g.m() << ' ' << g.n() << ' ' << g.seed() << ' ' << g.vertex_offset() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

MultiGraph read_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("edge list: missing header line");
  std::istringstream hs(header);
  std::string tag;
  std::int64_t m = 0;
  Vertex n = 0;
  std::uint64_t seed = 0;
  Vertex offset = 0;
  if (!(hs >> tag >> m >> n >> seed >> offset) || tag != "pa") {
    throw std::invalid_argument("edge list line 1: expected 'pa m n seed vertex_offset'");
  }
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Vertex u = 0;
    Vertex v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected 'u v'");
    }
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return MultiGraph(n, offset, std::move(edges), m, seed);
}

MultiGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace paspec
