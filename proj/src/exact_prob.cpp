#include "paspec/exact_prob.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace paspec {

std::int64_t LabeledGraph::in_degree(Vertex v) const {
  return std::count_if(edges.begin(), edges.end(), [v](const LabeledEdge& e) { return e.in == v; });
}

std::int64_t LabeledGraph::out_degree(Vertex v) const {
  return std::count_if(edges.begin(), edges.end(),
                       [v](const LabeledEdge& e) { return e.out == v; });
}

std::int64_t LabeledGraph::crossing(Vertex t) const {
  return std::count_if(edges.begin(), edges.end(),
                       [t](const LabeledEdge& e) { return e.in <= t && t <= e.out; });
}

std::vector<Vertex> LabeledGraph::in_vertices() const {
  std::set<Vertex> s;
  for (const auto& e : edges) s.insert(e.in);
  return {s.begin(), s.end()};
}

std::vector<Vertex> LabeledGraph::out_vertices() const {
  std::set<Vertex> s;
  for (const auto& e : edges) s.insert(e.out);
  return {s.begin(), s.end()};
}

std::vector<Vertex> LabeledGraph::vertices() const {
  std::set<Vertex> s;
  for (const auto& e : edges) {
    s.insert(e.in);
    s.insert(e.out);
  }
  return {s.begin(), s.end()};
}

Vertex LabeledGraph::max_vertex() const {
  Vertex best = 0;
  for (const auto& e : edges) best = std::max({best, e.in, e.out});
  return best;
}

bool LabeledGraph::well_formed() const {
  std::set<Vertex> outs;
  for (const auto& e : edges) {
    if (e.in < 1 || e.in > e.out) return false;
    if (!outs.insert(e.out).second) return false;
  }
  return true;
}

ExactProbability labeled_probability_exact(const LabeledGraph& s, Vertex n) {
  ExactProbability result;
  if (!s.well_formed()) {
    result.value = 0;
    result.valid = false;
    result.note = "out-degree above one or edge with in > out";
    return result;
  }
  if (s.max_vertex() > n) {
    result.value = 0;
    result.valid = false;
    result.note = "vertex beyond n";
    return result;
  }
  Rational p = 1;
  for (Vertex v : s.in_vertices()) {
    for (std::int64_t f = 2; f <= s.in_degree(v); ++f) p *= f;
  }
  const auto outs = s.out_vertices();
  for (Vertex v : outs) p /= (2 * v - 1);
  for (Vertex i = 1; i <= n; ++i) {
    if (std::binary_search(outs.begin(), outs.end(), i)) continue;
    const std::int64_t c = s.crossing(i);
    if (c != 0) p *= Rational(2 * i - 1 + c, 2 * i - 1);
  }
  result.value = p;
  return result;
}

ApproxProbability labeled_probability_approx(const LabeledGraph& s, Vertex n) {
  ApproxProbability result;
  if (!s.well_formed() || s.max_vertex() > n) {
    result.valid = false;
    return result;
  }
  double estimate = 1.0;
  for (Vertex v : s.in_vertices()) estimate *= std::tgamma(static_cast<double>(s.in_degree(v)) + 1.0);
  for (const auto& e : s.edges) {
    estimate /= 2.0 * std::sqrt(static_cast<double>(e.in) * static_cast<double>(e.out));
  }
  double correction = 0.0;
  for (Vertex v : s.vertices()) {
    const auto c = static_cast<double>(s.crossing(v));
    correction += c * c / static_cast<double>(v);
  }
  const double band = std::exp(kApproxBandConstant * correction);
  result.estimate = estimate;
  result.lower = estimate / band;
  result.upper = estimate * band;
  return result;
}

ProcessAtlas enumerate_process(Vertex n) {
  if (n < 1) throw std::invalid_argument("enumerate_process: n must be >= 1");
  if (n > ProcessAtlas::kMaxVertices) {
    throw CapExceeded("enumerate_process: n = " + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(ProcessAtlas::kMaxVertices));
  }
  ProcessAtlas atlas;
  atlas.n = n;
  for (Vertex t = 2; t <= n; ++t) atlas.denominator *= 2 * t - 1;

  std::vector<Vertex> choice{1};
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n) + 1, 0);
  degree[1] = 2;
  auto recurse = [&](auto&& self, Vertex t, std::int64_t numerator) -> void {
    if (t > n) {
      atlas.choices.push_back(choice);
      atlas.numerators.push_back(numerator);
      return;
    }
    for (Vertex i = 1; i <= t; ++i) {
      const std::int64_t weight = i < t ? degree[static_cast<std::size_t>(i)] : 1;
      ++degree[static_cast<std::size_t>(i)];
      ++degree[static_cast<std::size_t>(t)];
      choice.push_back(i);
      self(self, t + 1, numerator * weight);
      choice.pop_back();
      --degree[static_cast<std::size_t>(i)];
      --degree[static_cast<std::size_t>(t)];
    }
  };
  recurse(recurse, 2, 1);
  return atlas;
}

Rational event_probability(const ProcessAtlas& atlas, const OutcomePredicate& predicate) {
  std::int64_t numerator = 0;
  for (std::size_t k = 0; k < atlas.size(); ++k) {
    if (predicate(atlas.choices[k])) numerator += atlas.numerators[k];
  }
  return Rational(numerator, atlas.denominator);
}

Rational marginal_probability(const ProcessAtlas& atlas, const LabeledGraph& s) {
  if (!s.well_formed() || s.max_vertex() > atlas.n) return 0;
  return event_probability(atlas, [&s](std::span<const Vertex> choices) {
    return std::all_of(s.edges.begin(), s.edges.end(), [&](const LabeledEdge& e) {
      return choices[static_cast<std::size_t>(e.out - 1)] == e.in;
    });
  });
}

namespace {

// Labeled graphs of G_{1,n} in mixed radix: digit j (radix j + 1) is 0 when
// vertex j sends no edge and i when it sends j -> i.
struct GraphCoding {
  explicit GraphCoding(Vertex n) : n(n), place(static_cast<std::size_t>(n) + 1, 1) {
    for (Vertex j = 2; j <= n; ++j) {
      place[static_cast<std::size_t>(j)] = place[static_cast<std::size_t>(j - 1)] * j;
    }
    total = place[static_cast<std::size_t>(n)] * (n + 1);
  }
  Vertex n;
  std::vector<std::int64_t> place;
  std::int64_t total = 0;

  Vertex digit(std::int64_t code, Vertex j) const {
    return static_cast<Vertex>((code / place[static_cast<std::size_t>(j)]) % (j + 1));
  }
};

}  // namespace

NegativeCorrelationReport check_negative_correlation(Vertex n) {
  constexpr Vertex kMax = 6;
  if (n < 1) throw std::invalid_argument("check_negative_correlation: n must be >= 1");
  if (n > kMax) {
    throw CapExceeded("check_negative_correlation: n = " + std::to_string(n) +
                      " exceeds the cap of " + std::to_string(kMax));
  }
  const ProcessAtlas atlas = enumerate_process(n);
  const GraphCoding coding(n);

  // Every labeled graph contained in an outcome is a sub-selection of its edges.
  std::vector<std::int64_t> numerator(static_cast<std::size_t>(coding.total), 0);
  for (std::size_t k = 0; k < atlas.size(); ++k) {
    const auto& choice = atlas.choices[k];
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::int64_t code = 0;
      for (Vertex j = 1; j <= n; ++j) {
        if (mask & (1u << (j - 1))) {
          code += choice[static_cast<std::size_t>(j - 1)] * coding.place[static_cast<std::size_t>(j)];
        }
      }
      numerator[static_cast<std::size_t>(code)] += atlas.numerators[k];
    }
  }

  std::vector<std::uint32_t> vertex_mask(static_cast<std::size_t>(coding.total), 0);
  for (std::int64_t code = 0; code < coding.total; ++code) {
    std::uint32_t bits = 0;
    for (Vertex j = 1; j <= n; ++j) {
      const Vertex target = coding.digit(code, j);
      if (target != 0) bits |= (1u << (j - 1)) | (1u << (target - 1));
    }
    vertex_mask[static_cast<std::size_t>(code)] = bits;
  }

  auto decode = [&](std::int64_t code) {
    LabeledGraph g;
    for (Vertex j = 1; j <= n; ++j) {
      const Vertex target = coding.digit(code, j);
      if (target != 0) g.edges.push_back({j, target});
    }
    return g;
  };

  NegativeCorrelationReport report;
  report.n = n;
  report.graphs = coding.total - 1;
  const std::int64_t d = atlas.denominator;
  for (std::int64_t a = 1; a < coding.total; ++a) {
    for (std::int64_t b = a + 1; b < coding.total; ++b) {
      if (vertex_mask[static_cast<std::size_t>(a)] & vertex_mask[static_cast<std::size_t>(b)]) {
        continue;
      }
      ++report.pairs_checked;
      // Disjoint out-vertices: the union's digits are the sum of both codes.
      const auto joint = static_cast<__int128>(numerator[static_cast<std::size_t>(a + b)]) * d;
      const auto product = static_cast<__int128>(numerator[static_cast<std::size_t>(a)]) *
                           numerator[static_cast<std::size_t>(b)];
      if (joint > product) {
        ++report.violations;
        if (!report.first_violation) {
          report.first_violation = to_string(decode(a)) + " and " + to_string(decode(b));
        }
      }
    }
  }
  return report;
}

std::vector<LabeledGraph> labeled_graphs_up_to(Vertex n, int max_edges) {
  std::vector<LabeledGraph> out;
  LabeledGraph current;
  auto recurse = [&](auto&& self, Vertex j) -> void {
    if (j > n) {
      if (!current.edges.empty()) out.push_back(current);
      return;
    }
    self(self, j + 1);
    if (static_cast<int>(current.edges.size()) == max_edges) return;
    for (Vertex i = 1; i <= j; ++i) {
      current.edges.push_back({j, i});
      self(self, j + 1);
      current.edges.pop_back();
    }
  };
  recurse(recurse, 1);
  return out;
}

ExactFormulaReport check_exact_formula(Vertex n, int max_edges) {
  ExactFormulaReport report;
  report.n = n;
  report.max_edges = max_edges;
  const ProcessAtlas atlas = enumerate_process(n);
  for (const auto& s : labeled_graphs_up_to(n, max_edges)) {
    ++report.graphs_checked;
    const auto exact = labeled_probability_exact(s, n);
    const auto oracle = marginal_probability(atlas, s);
    if (exact.value != oracle) {
      ++report.mismatches;
      if (!report.first_mismatch) {
        report.first_mismatch = to_string(s) + ": formula " + exact.value.str() + " vs enumeration " + oracle.str();
      }
    }
    const auto approx = labeled_probability_approx(s, n);
    const double value = exact.value.convert_to<double>();
    if (value < approx.lower * (1 - 1e-12) || value > approx.upper * (1 + 1e-12)) ++report.band_misses;
  }
  return report;
}

std::string to_string(const LabeledGraph& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    if (k) out << ", ";
    out << '(' << s.edges[k].out << "->" << s.edges[k].in << ')';
  }
  out << '}';
  return out.str();
}

}  // namespace paspec
