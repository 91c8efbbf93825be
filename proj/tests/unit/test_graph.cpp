#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "paspec/exact_prob.hpp"
#include "paspec/graph.hpp"

using namespace paspec;

namespace {

std::int64_t degree_sum(const MultiGraph& g) {
  const auto d = g.degree_vector();
  return std::accumulate(d.begin(), d.end(), std::int64_t{0});
}

std::vector<std::pair<Vertex, Vertex>> sorted_pairs(const MultiGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("G_{1,1} is a single loop at vertex 1") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto g = generate_g1(1, seed);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0] == Edge{1, 1});
    CHECK(g.degree_vector()[0] == 2);
  }
  CHECK(generate({1, 1, 5}).edges() == std::vector<Edge>{{1, 1}});
  CHECK_THROWS_AS(generate_g1(0, 1), std::invalid_argument);
}

TEST_CASE("n = 2: edge {1,2} has frequency 2/3 over 10^6 seeds") {
  const int trials = 1000000;
  int hits = 0;
  for (int s = 0; s < trials; ++s) {
    const auto g = generate_g1(2, static_cast<std::uint64_t>(s));
    if (g.edges()[1] == Edge{1, 2}) ++hits;
    else REQUIRE(g.edges()[1] == Edge{2, 2});
  }
  CHECK(std::abs(static_cast<double>(hits) / trials - 2.0 / 3.0) <= 0.002);
}

TEST_CASE("n = 3 outcome frequencies match the exact atlas within 3 standard errors") {
  const auto atlas = enumerate_process(3);
  std::map<std::vector<Vertex>, int> counts;
  const int trials = 1000000;
  for (int s = 0; s < trials; ++s) {
    const auto g = generate_g1(3, 1000000ULL + static_cast<std::uint64_t>(s));
    std::vector<Vertex> choice;
    for (const auto& e : g.edges()) choice.push_back(e.u);
    ++counts[choice];
  }
  for (std::size_t k = 0; k < atlas.size(); ++k) {
    const double p = static_cast<double>(atlas.numerators[k]) / static_cast<double>(atlas.denominator);
    const double freq = static_cast<double>(counts[atlas.choices[k]]) / trials;
    const double se = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(freq - p) <= 3 * se);
  }
}

TEST_CASE("generation is deterministic and satisfies the degree and birth-order invariants") {
  const auto a = generate({3, 1000, 42});
  const auto b = generate({3, 1000, 42});
  CHECK(a == b);
  CHECK(to_edge_list(a) == to_edge_list(b));
  CHECK_FALSE(generate({3, 1000, 43}) == a);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate({3, 1000, seed});
    CHECK(g.edge_count() == 3000);
    CHECK(degree_sum(g) == 2 * 3 * 1000);
    CHECK(check_birth_order(g, 3));
  }
  auto g = generate({2, 50, 7});
  auto edges = g.edges();
  std::swap(edges.front(), edges.back());
  CHECK_FALSE(check_birth_order(MultiGraph(50, 1, edges, 2, 7), 2));
}

TEST_CASE("prefix degree sums of G_{1,n} equal 2t") {
  const auto g = generate_g1(500, 3);
  std::vector<std::int64_t> deg(501, 0);
  for (std::size_t t = 0; t < g.edge_count(); ++t) {
    const auto& e = g.edges()[t];
    CHECK(e.v == static_cast<Vertex>(t + 1));
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
    CHECK(std::accumulate(deg.begin(), deg.end(), std::int64_t{0}) == 2 * static_cast<std::int64_t>(t + 1));
  }
}

TEST_CASE("collapse") {
  SUBCASE("m = 1 is the identity") {
    const auto g1 = generate_g1(200, 11);
    const auto c = collapse(g1, 1);
    CHECK(c.edges() == g1.edges());
    CHECK(c.n() == g1.n());
  }
  SUBCASE("loop@1 and edge {1,2} with m = 2 give one vertex with two loops") {
    const auto g1 = MultiGraph::from_pairs(2, {{1, 1}, {1, 2}});
    const auto c = collapse(g1, 2);
    CHECK(c.n() == 1);
    CHECK(c.edges() == std::vector<Edge>{{1, 1}, {1, 1}});
    CHECK(c.loop_vector()[0] == 2);
  }
  SUBCASE("(m=2, n=2) has degree sum 8") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(degree_sum(generate({2, 2, seed})) == 8);
  }
  SUBCASE("matches a direct relabelling") {
    const std::int64_t m = 3;
    const auto g1 = generate_g1(60, 5);
    std::vector<std::pair<Vertex, Vertex>> expect;
    for (const auto& e : g1.edges()) {
      const Vertex a = (e.u - 1) / m + 1;
      const Vertex b = (e.v - 1) / m + 1;
      expect.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(expect.begin(), expect.end());
    CHECK(sorted_pairs(collapse(g1, m)) == expect);
    CHECK(generate({m, 20, 5}) == collapse(g1, m));
  }
  CHECK_THROWS_AS(collapse(generate_g1(7, 1), 2), std::invalid_argument);
}

TEST_CASE("the G_{2,2} example is an admissible outcome") {
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 200 && !seen; ++seed) {
    auto pairs = sorted_pairs(generate({2, 2, seed}));
    seen = pairs == std::vector<std::pair<Vertex, Vertex>>{{1, 1}, {1, 1}, {1, 2}, {2, 2}};
  }
  CHECK(seen);
}

TEST_CASE("truncation") {
  const auto g = generate({2, 10, 9});
  SUBCASE("n = 10, eps = 0.25 keeps 4..10") {
    CHECK(truncation_cut(0.25, 10) == 3);
    const auto t = truncate(g, {0.25});
    CHECK(t.vertex_offset() == 4);
    CHECK(t.vertex_count() == 7);
    for (const auto& e : t.edges()) CHECK(e.u >= 4);
    std::size_t kept = 0;
    for (const auto& e : g.edges()) kept += e.u >= 4;
    CHECK(t.edge_count() == kept);
  }
  SUBCASE("cut 0 leaves the graph unchanged") {
    CHECK(truncate_at(g, 0) == g);
  }
  SUBCASE("|V| = n - ceil(eps n)") {
    const auto big = generate({2, 10000, 1});
    CHECK(truncate(big, {0.1}).vertex_count() == 9000);
    CHECK(truncation_cut(0.3, 10) == 3);
    CHECK(truncation_cut(0.1, 3000) == 300);
  }
  CHECK_THROWS_AS(truncate(g, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(truncate(g, {1.0}), std::invalid_argument);
}

TEST_CASE("degrees and top degrees") {
  const auto loop = MultiGraph::from_pairs(2, {{2, 2}, {1, 1}});
  CHECK(degrees(loop) == std::vector<VertexDegree>{{1, 2}, {2, 2}});
  const auto g = generate({3, 400, 8});
  const auto top = top_degrees(g, 400);
  std::int64_t sum = 0;
  for (const auto& e : top.entries) sum += e.degree;
  CHECK(sum == 2 * 3 * 400);
  CHECK_FALSE(top.truncated);
  for (std::size_t i = 1; i < top.entries.size(); ++i) {
    const auto& a = top.entries[i - 1];
    const auto& b = top.entries[i];
    CHECK((a.degree > b.degree || (a.degree == b.degree && a.vertex < b.vertex)));
  }
  const auto over = top_degrees(g, 500);
  CHECK(over.truncated);
  CHECK(over.entries.size() == 400);
}

TEST_CASE("mean d(i) sqrt(i/n) is stable as n grows") {
  auto stat = [](Vertex n) {
    double s = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      s += static_cast<double>(generate_g1(n, seed).degree_vector()[9]) * std::sqrt(10.0 / static_cast<double>(n));
    }
    return s / 200.0;
  };
  const double a = stat(10000);
  const double b = stat(100000);
  CHECK(b / a >= 1.0 / 1.5);
  CHECK(b / a <= 1.5);
}

TEST_CASE("edge list round trip is bit exact") {
  const auto g = truncate(generate({3, 300, 21}), {0.1});
  const auto text = to_edge_list(g);
  CHECK(text.rfind("pa 3 300 21 31\n", 0) == 0);
  const auto back = parse_edge_list(text);
  CHECK(back == g);
  CHECK(to_edge_list(back) == text);
  CHECK_THROWS_AS(parse_edge_list("nope\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("pa 1 2 0 1\n1 3\n"), std::invalid_argument);
}
