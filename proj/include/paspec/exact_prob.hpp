#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "paspec/graph.hpp"

namespace paspec {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a request exceeds an enumeration cap.
class CapExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One edge of G_{1,n} as born: vertex `out` attached to vertex `in` <= out.
struct LabeledEdge {
  Vertex out = 0;
  Vertex in = 0;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

/// A concrete set of labeled edges inside the uncollapsed process G_{1,n}.
struct LabeledGraph {
  std::vector<LabeledEdge> edges;

  std::int64_t in_degree(Vertex v) const;
  std::int64_t out_degree(Vertex v) const;
  /// Number of edges (i, j), i <= j, with i <= t <= j.
  std::int64_t crossing(Vertex t) const;
  std::vector<Vertex> in_vertices() const;
  std::vector<Vertex> out_vertices() const;
  std::vector<Vertex> vertices() const;
  Vertex max_vertex() const;
  /// Every vertex sends at most one edge and every edge has in <= out.
  bool well_formed() const;
};

struct ExactProbability {
  Rational value;
  /// False when S cannot be a subgraph of G_{1,n} (out-degree above one,
  /// in > out, or a vertex beyond n); value is then 0.
  bool valid = true;
  std::string note;
};

/// P[S is a subgraph of G_{1,n}] from the exact product formula
///   prod_{V^-} d_in(i)! * prod_{V^+} 1/(2i-1) * prod_{i in [n] \ V^+} (1 + C_S(i)/(2i-1)).
/// The initial loop (1 -> 1) is an ordinary edge of S: it is certain, and the
/// formula prices it as such.
ExactProbability labeled_probability_exact(const LabeledGraph& s, Vertex n);

struct ApproxProbability {
  /// prod d_in! * prod_{edges} 1/(2 sqrt(ij))
  double estimate = 0.0;
  /// estimate * exp(-/+ c * sum_{i in V(S)} C_S(i)^2 / i) with c = kApproxBandConstant.
  double lower = 0.0;
  double upper = 0.0;
  bool valid = true;
};

/// Constant in the exp(O(sum C_S(i)^2/i)) correction band. Chosen so the band
/// brackets the exact formula for every labeled graph with at most three
/// edges and n <= 8 (checked exhaustively in the tests).
inline constexpr double kApproxBandConstant = 1.0;

ApproxProbability labeled_probability_approx(const LabeledGraph& s, Vertex n);

/// Every outcome of G_{1,n} with its exact probability.
///
/// Outcome probabilities all share the denominator (2n-1)!!, so they are
/// stored as integer numerators over `denominator`.
struct ProcessAtlas {
  static constexpr Vertex kMaxVertices = 8;

  Vertex n = 0;
  std::int64_t denominator = 1;
  /// choices[k][t-1] = X_t for outcome k, with X_1 = 1 (the initial loop).
  std::vector<std::vector<Vertex>> choices;
  std::vector<std::int64_t> numerators;

  std::size_t size() const noexcept { return choices.size(); }
  Rational probability(std::size_t k) const { return Rational(numerators[k], denominator); }
};

ProcessAtlas enumerate_process(Vertex n);

using OutcomePredicate = std::function<bool(std::span<const Vertex> choices)>;

Rational event_probability(const ProcessAtlas& atlas, const OutcomePredicate& predicate);
/// Atlas marginal P[S subset of G_{1,n}].
Rational marginal_probability(const ProcessAtlas& atlas, const LabeledGraph& s);

struct NegativeCorrelationReport {
  Vertex n = 0;
  std::int64_t graphs = 0;
  std::int64_t pairs_checked = 0;
  std::int64_t violations = 0;
  std::optional<std::string> first_violation;
  bool passed() const noexcept { return violations == 0; }
};

/// Checks P[H1 u H2] <= P[H1] P[H2] for every unordered pair of non-empty,
/// vertex-disjoint labeled graphs of G_{1,n}, in exact arithmetic.
NegativeCorrelationReport check_negative_correlation(Vertex n);

struct ExactFormulaReport {
  Vertex n = 0;
  int max_edges = 0;
  std::int64_t graphs_checked = 0;
  std::int64_t mismatches = 0;
  /// Graphs whose exact value falls outside the approximate band.
  std::int64_t band_misses = 0;
  std::optional<std::string> first_mismatch;
  bool passed() const noexcept { return mismatches == 0 && band_misses == 0; }
};

/// Compares labeled_probability_exact with the atlas marginal for every
/// well-formed labeled graph of G_{1,n} with 1..max_edges edges, and checks
/// that the approximate band brackets the exact value.
ExactFormulaReport check_exact_formula(Vertex n, int max_edges);

/// Every well-formed labeled graph of G_{1,n} with between 1 and max_edges edges.
std::vector<LabeledGraph> labeled_graphs_up_to(Vertex n, int max_edges);

std::string to_string(const LabeledGraph& s);

}  // namespace paspec
