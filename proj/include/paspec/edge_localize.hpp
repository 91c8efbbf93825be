#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "paspec/graph.hpp"
#include "paspec/lanczos.hpp"
#include "paspec/spectra.hpp"

namespace paspec {

struct EdgeLawRow {
  int i = 0;
  double lambda = 0.0;
  double sqrt_delta = 0.0;
  double ratio = 0.0;
};

struct EdgeLawReport {
  std::vector<EdgeLawRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
};

/// lambda_i against sqrt(Delta_i) for i = 1..K.
EdgeLawReport edge_law_report(const MultiGraph& g, int K);
EdgeLawReport edge_law_report(const std::vector<EigenPair>& pairs, const TopDegrees& top);

struct LocalizationRow {
  int i = 0;
  double sup_norm = 0.0;
  double second_largest = 0.0;
  Vertex argmax = 0;
  /// Vertex achieving Delta_i.
  Vertex hub = 0;
  bool on_hub = false;
};

std::vector<LocalizationRow> localization_report(const MultiGraph& g, int K);
std::vector<LocalizationRow> localization_report(const std::vector<EigenPair>& pairs,
                                                 const TopDegrees& top, Vertex vertex_offset);

struct DecompositionParams {
  Vertex s = 0;
  Vertex t_thresh = 0;
  std::int64_t k = 0;
  std::int64_t b = 0;
};

/// s = ceil(n^{1/7}), t = ceil(n^{13/25}), k = ceil(n^{1/25}), b = ceil(n^{1/20}).
DecompositionParams default_decomposition_params(Vertex n);

/// S = [1, s] and T = (t, n].
///   G1: all edges inside [1, t]
///   G2: all edges inside [s, n]
///   G3: edges of G(S, T) at vertices of T with two or more edges into S
///   G4: the remaining edges of G(S, T), a vertex-disjoint union of stars centered in S
/// loss[u - 1] = d(u, G1) + d(u, G3) for u in S.
struct StarDecomposition {
  DecompositionParams params;
  MultiGraph g1;
  MultiGraph g2;
  MultiGraph g3;
  MultiGraph g4;
  /// Every edge of G not in G4, so A(G) = A(G4) + A(remainder).
  MultiGraph remainder;
  std::vector<std::int64_t> loss;
};

StarDecomposition decompose(const MultiGraph& g, const DecompositionParams& params);

struct DecompositionReport {
  double norm_g1 = 0.0;
  double norm_g2 = 0.0;
  double norm_g3 = 0.0;
  std::int64_t max_loss = 0;
  /// Star sizes of G4 in decreasing order (center degree).
  std::vector<std::int64_t> star_sizes;
  std::vector<double> star_eigenvalues;
  /// Top K eigenvalues of G and G4.
  std::vector<double> lambda_g;
  std::vector<double> lambda_g4;
  double max_shift = 0.0;
  bool weyl_holds = false;
  bool degree_identity_holds = false;
  bool g4_is_star_union = false;
};

DecompositionReport decomposition_report(const MultiGraph& g, const StarDecomposition& dec, int K);

/// G4 is a vertex-disjoint union of stars whose centers lie in S.
bool is_star_union(const MultiGraph& g4, Vertex s);
/// d(u, G) = d(u, G4) + loss(u) for every u in S.
bool degree_identity_holds(const MultiGraph& g, const StarDecomposition& dec);

struct DavisKahanCertificate {
  double sin_observed = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double perturbation_norm = 0.0;
  /// observed <= bound + tol whenever gap > 10 tol; vacuous otherwise.
  bool holds = true;
  bool vacuous = false;
};

/// Angle between the i-th eigenvectors (1-based, descending) of A and B = A - C,
/// against ||C|| / min_{j != i} |lambda_i(A) - lambda_j(B)|.
DavisKahanCertificate davis_kahan_certificate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int i);
/// Same with B = G4, using the analytic star eigenpairs of G4.
DavisKahanCertificate davis_kahan_star_certificate(const MultiGraph& g, const StarDecomposition& dec,
                                                   int i);

struct DegreeGapReport {
  std::vector<std::int64_t> deltas;
  /// (Delta_i - Delta_{i+1}) log n / sqrt n for i = 1..K.
  std::vector<double> normalized_gaps;
  double delta1_bound = 0.0;
  bool delta1_within_bound = false;
};

DegreeGapReport degree_gap_report(const MultiGraph& g, int K);

void write_eigenvector_csv(std::ostream& out, const std::vector<EigenPair>& pairs, Vertex vertex_offset);

}  // namespace paspec
