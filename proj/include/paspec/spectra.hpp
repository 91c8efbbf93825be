#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "paspec/graph.hpp"

namespace paspec {

using IntMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense adjacency. Row r is vertex vertex_offset + r.
/// Off-diagonal entries are edge multiplicities, diagonal entries loop counts.
struct AdjacencyMatrix {
  Vertex vertex_offset = 1;
  IntMatrix entries;

  std::int64_t size() const noexcept { return entries.rows(); }
  Vertex label(std::int64_t row) const noexcept { return vertex_offset + row; }
  std::int64_t index(Vertex v) const noexcept { return v - vertex_offset; }
  Eigen::MatrixXd to_double() const { return entries.cast<double>(); }
};

AdjacencyMatrix adjacency(const MultiGraph& g);

/// Compressed sparse rows with multiplicities; same indexing as AdjacencyMatrix.
struct SparseAdjacency {
  Vertex vertex_offset = 1;
  std::int64_t size = 0;
  std::vector<std::int64_t> row_ptr{0};
  std::vector<std::int64_t> cols;
  std::vector<std::int64_t> values;

  std::int64_t nonzeros() const noexcept { return static_cast<std::int64_t>(cols.size()); }
  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
};

SparseAdjacency sparse_adjacency(const MultiGraph& g);

/// Uniform atomic measure on eigenvalues, sorted descending.
struct SpectralMeasure {
  std::vector<double> atoms;
  /// Factor already applied to every atom.
  double scale = 1.0;
  std::string scale_label = "none";

  std::size_t size() const noexcept { return atoms.size(); }
  double weight() const noexcept { return atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size()); }
  SpectralMeasure scaled(double factor, std::string label) const;
};

struct EigenDecomposition {
  SpectralMeasure measure;
  /// Column i pairs with measure.atoms[i]; empty unless vectors were requested.
  Eigen::MatrixXd vectors;
};

/// Full symmetric eigensolve (LAPACK dsyevd). Descending order; equal values
/// keep the solver's original index order.
EigenDecomposition eigen_full(const Eigen::MatrixXd& a, bool with_vectors = false);
EigenDecomposition eigen_full(const AdjacencyMatrix& a, bool with_vectors = false);
std::vector<double> eigenvalues(const Eigen::MatrixXd& a);

/// max_i ||A v_i - lambda_i v_i||.
double max_residual(const Eigen::MatrixXd& a, const EigenDecomposition& dec);

/// (1/n) sum lambda_i^k over the stored (already scaled) atoms.
double esd_moment(const SpectralMeasure& measure, int k);

using BigInt = boost::multiprecision::cpp_int;

struct WalkCount {
  BigInt value;
  /// Set when 64-bit arithmetic overflowed and the count was redone exactly.
  bool big_integer_fallback = false;
  double to_double() const { return value.convert_to<double>(); }
};

/// Tr(A^k) = number of closed k-walks, by sparse dynamic programming:
/// (A^k)_uu = <A^a e_u, A^b e_u> with a = floor(k/2), b = k - a.
WalkCount trace_power_walks(const MultiGraph& g, int k);
WalkCount trace_power_walks(const SparseAdjacency& a, int k);

/// sup over intervals I of |mu(I) - eta(I)|. Atoms closer than merge_tol are
/// treated as equal.
double interval_distance(const SpectralMeasure& mu, const SpectralMeasure& eta,
                         double merge_tol = 0.0);

struct InterlacingReport {
  bool holds = true;
  /// Largest amount by which any inequality of the chain fails (<= 0 when it holds).
  double worst_violation = 0.0;
  double tolerance = 0.0;
};

/// lambda_i(A) >= lambda_i(B) >= lambda_{i+n-k}(A) for B the principal
/// submatrix on `keep` (row indices of A).
InterlacingReport check_interlacing(const Eigen::MatrixXd& a, const std::vector<std::int64_t>& keep);
/// Same check from precomputed descending spectra of A (size n) and B (size k).
InterlacingReport check_interlacing_spectra(const std::vector<double>& a,
                                            const std::vector<double>& b, double tolerance);

struct WeylReport {
  bool holds = true;
  double max_shift = 0.0;
  double perturbation_norm = 0.0;
};

/// max_i |lambda_i(A) - lambda_i(B)| <= ||A - B||.
WeylReport check_weyl(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// max_i (1/c_i) sum_j c_j |a_ij|, an upper bound on ||A||.
double norm_upper_bound(const Eigen::MatrixXd& a, std::span<const double> c);
double norm_upper_bound(const SparseAdjacency& a, std::span<const double> c);

/// 1 / sqrt(n p (1 - p)) with p = 2m/n.
double figure1_scale(std::int64_t m, std::int64_t n);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
};

/// `bins` equal-width bins on [lo, hi]; atoms outside are dropped.
Histogram histogram(const SpectralMeasure& measure, int bins, double lo, double hi);

void write_spectrum_csv(std::ostream& out, const SpectralMeasure& measure);
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace paspec
