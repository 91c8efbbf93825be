#include "paspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <lapacke.h>

namespace paspec {

AdjacencyMatrix adjacency(const MultiGraph& g) {
  AdjacencyMatrix a;
  a.vertex_offset = g.vertex_offset();
  const auto n = g.vertex_count();
  a.entries = IntMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto i = e.u - a.vertex_offset;
    const auto j = e.v - a.vertex_offset;
    if (i == j) {
      ++a.entries(i, i);
    } else {
      ++a.entries(i, j);
      ++a.entries(j, i);
    }
  }
  return a;
}

SparseAdjacency sparse_adjacency(const MultiGraph& g) {
  SparseAdjacency a;
  a.vertex_offset = g.vertex_offset();
  a.size = g.vertex_count();
  const auto n = static_cast<std::size_t>(a.size);
  std::vector<std::int64_t> fill(n + 1, 0);
  for (const Edge& e : g.edges()) {
    ++fill[static_cast<std::size_t>(e.u - a.vertex_offset) + 1];
    if (e.u != e.v) ++fill[static_cast<std::size_t>(e.v - a.vertex_offset) + 1];
  }
  std::partial_sum(fill.begin(), fill.end(), fill.begin());
  std::vector<std::int64_t> raw(static_cast<std::size_t>(fill.back()));
  std::vector<std::int64_t> cursor(fill.begin(), fill.end() - 1);
  for (const Edge& e : g.edges()) {
    const auto i = e.u - a.vertex_offset;
    const auto j = e.v - a.vertex_offset;
    raw[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] = j;
    if (i != j) raw[static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)]++)] = i;
  }
  a.row_ptr.assign(n + 1, 0);
  a.cols.reserve(raw.size());
  a.values.reserve(raw.size());
  for (std::size_t r = 0; r < n; ++r) {
    auto first = raw.begin() + fill[r];
    auto last = raw.begin() + fill[r + 1];
    std::sort(first, last);
    for (auto it = first; it != last;) {
      auto run = std::find_if(it, last, [v = *it](std::int64_t x) { return x != v; });
      a.cols.push_back(*it);
      a.values.push_back(run - it);
      it = run;
    }
    a.row_ptr[r + 1] = static_cast<std::int64_t>(a.cols.size());
  }
  return a;
}

void SparseAdjacency::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::int64_t r = 0; r < size; ++r) {
    double acc = 0.0;
    for (auto p = row_ptr[static_cast<std::size_t>(r)]; p < row_ptr[static_cast<std::size_t>(r) + 1];
         ++p) {
      acc += static_cast<double>(values[static_cast<std::size_t>(p)]) *
             x[static_cast<std::size_t>(cols[static_cast<std::size_t>(p)])];
    }
    y[static_cast<std::size_t>(r)] = acc;
  }
}

SpectralMeasure SpectralMeasure::scaled(double factor, std::string label) const {
  SpectralMeasure out;
  out.atoms = atoms;
  for (double& x : out.atoms) x *= factor;
  if (factor < 0) std::reverse(out.atoms.begin(), out.atoms.end());
  out.scale = scale * factor;
  out.scale_label = std::move(label);
  return out;
}

namespace {

void require_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigen_full: matrix is not square");
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        throw std::invalid_argument("eigen_full: matrix is not symmetric at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

EigenDecomposition eigen_full(const Eigen::MatrixXd& a, bool with_vectors) {
  require_symmetric(a);
  const auto n = static_cast<lapack_int>(a.rows());
  EigenDecomposition dec;
  if (n == 0) return dec;
  Eigen::MatrixXd work = a;
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'U', n,
                                         work.data(), n, w.data());
  if (info != 0) {
    throw std::runtime_error("eigen_full: dsyevd failed with info = " + std::to_string(info));
  }
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&w](std::size_t x, std::size_t y) { return w[x] > w[y]; });
  dec.measure.atoms.resize(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) dec.measure.atoms[i] = w[order[i]];
  if (with_vectors) {
    dec.vectors.resize(n, n);
    for (std::size_t i = 0; i < order.size(); ++i) {
      dec.vectors.col(static_cast<Eigen::Index>(i)) = work.col(static_cast<Eigen::Index>(order[i]));
    }
  }
  return dec;
}

EigenDecomposition eigen_full(const AdjacencyMatrix& a, bool with_vectors) {
  return eigen_full(a.to_double(), with_vectors);
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& a) { return eigen_full(a, false).measure.atoms; }

double max_residual(const Eigen::MatrixXd& a, const EigenDecomposition& dec) {
  if (dec.vectors.size() == 0) throw std::invalid_argument("max_residual: no eigenvectors stored");
  const Eigen::Map<const Eigen::VectorXd> lambda(dec.measure.atoms.data(),
                                                 static_cast<Eigen::Index>(dec.measure.atoms.size()));
  const Eigen::MatrixXd r = a * dec.vectors - dec.vectors * lambda.asDiagonal();
  return r.colwise().norm().maxCoeff();
}

double esd_moment(const SpectralMeasure& measure, int k) {
  if (k < 0) throw std::invalid_argument("esd_moment: k must be >= 0");
  if (measure.atoms.empty()) return 0.0;
  long double sum = 0.0L;
  for (double x : measure.atoms) {
    long double p = 1.0L;
    for (int j = 0; j < k; ++j) p *= x;
    sum += p;
  }
  return static_cast<double>(sum / static_cast<long double>(measure.atoms.size()));
}

namespace {

struct Overflow {};

struct CheckedInt {
  static std::int64_t add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw Overflow{};
    return r;
  }
};

struct ExactInt {
  static BigInt add(const BigInt& x, const BigInt& y) { return x + y; }
  static BigInt mul(const BigInt& x, const BigInt& y) { return x * y; }
};

template <class T, class Ops>
BigInt walk_trace(const SparseAdjacency& a, int k) {
  const auto n = static_cast<std::size_t>(a.size);
  const int half = k / 2;
  const int rest = k - half;
  std::vector<T> scratch(n, T(0));
  std::vector<char> marked(n, 0);
  std::vector<std::int64_t> touched;
  using Row = std::vector<std::pair<std::int64_t, T>>;
  Row current;
  Row next;
  Row saved;

  auto step = [&](const Row& from, Row& to) {
    touched.clear();
    for (const auto& [v, x] : from) {
      for (auto p = a.row_ptr[static_cast<std::size_t>(v)]; p < a.row_ptr[static_cast<std::size_t>(v) + 1];
           ++p) {
        const auto w = static_cast<std::size_t>(a.cols[static_cast<std::size_t>(p)]);
        scratch[w] = Ops::add(scratch[w], Ops::mul(x, T(a.values[static_cast<std::size_t>(p)])));
        if (!marked[w]) {
          marked[w] = 1;
          touched.push_back(static_cast<std::int64_t>(w));
        }
      }
    }
    to.clear();
    for (auto w : touched) {
      const auto idx = static_cast<std::size_t>(w);
      to.emplace_back(w, scratch[idx]);
      scratch[idx] = T(0);
      marked[idx] = 0;
    }
  };

  T total(0);
  for (std::size_t u = 0; u < n; ++u) {
    current.assign(1, {static_cast<std::int64_t>(u), T(1)});
    if (half == 0) saved = current;
    for (int s = 1; s <= rest; ++s) {
      step(current, next);
      std::swap(current, next);
      if (s == half) saved = current;
    }
    for (const auto& [w, x] : current) scratch[static_cast<std::size_t>(w)] = x;
    for (const auto& [w, x] : saved) {
      total = Ops::add(total, Ops::mul(x, scratch[static_cast<std::size_t>(w)]));
    }
    for (const auto& [w, x] : current) scratch[static_cast<std::size_t>(w)] = T(0);
  }
  return BigInt(total);
}

}  // namespace

WalkCount trace_power_walks(const SparseAdjacency& a, int k) {
  if (k < 0) throw std::invalid_argument("trace_power_walks: k must be >= 0");
  WalkCount result;
  if (k == 0) {
    result.value = a.size;
    return result;
  }
  try {
    result.value = walk_trace<std::int64_t, CheckedInt>(a, k);
  } catch (const Overflow&) {
    result.value = walk_trace<BigInt, ExactInt>(a, k);
    result.big_integer_fallback = true;
  }
  return result;
}

WalkCount trace_power_walks(const MultiGraph& g, int k) {
  return trace_power_walks(sparse_adjacency(g), k);
}

double interval_distance(const SpectralMeasure& mu, const SpectralMeasure& eta, double merge_tol) {
  if (mu.atoms.empty() || eta.atoms.empty()) {
    return mu.atoms.empty() && eta.atoms.empty() ? 0.0 : 1.0;
  }
  const auto n_mu = static_cast<std::int64_t>(mu.atoms.size());
  const auto n_eta = static_cast<std::int64_t>(eta.atoms.size());
  std::vector<double> a(mu.atoms);
  std::vector<double> b(eta.atoms);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  // Signed integer weight of each merged atom: c_mu * n_eta - c_eta * n_mu.
  std::vector<std::int64_t> weights;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const double start = j == b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    std::int64_t w = 0;
    while (i < a.size() && a[i] <= start + merge_tol) {
      w += n_eta;
      ++i;
    }
    while (j < b.size() && b[j] <= start + merge_tol) {
      w -= n_mu;
      ++j;
    }
    weights.push_back(w);
  }

  std::int64_t best_max = 0;
  std::int64_t best_min = 0;
  std::int64_t run_max = 0;
  std::int64_t run_min = 0;
  for (std::int64_t w : weights) {
    run_max = std::max<std::int64_t>(0, run_max + w);
    run_min = std::min<std::int64_t>(0, run_min + w);
    best_max = std::max(best_max, run_max);
    best_min = std::min(best_min, run_min);
  }
  const double denom = static_cast<double>(n_mu) * static_cast<double>(n_eta);
  return static_cast<double>(std::max(best_max, -best_min)) / denom;
}

InterlacingReport check_interlacing_spectra(const std::vector<double>& a, const std::vector<double>& b,
                                            double tolerance) {
  if (b.size() > a.size()) {
    throw std::invalid_argument("check_interlacing: submatrix larger than matrix");
  }
  InterlacingReport report;
  report.tolerance = tolerance;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  const std::size_t shift = a.size() - b.size();
  for (std::size_t i = 0; i < b.size(); ++i) {
    report.worst_violation = std::max({report.worst_violation, b[i] - a[i], a[i + shift] - b[i]});
  }
  if (b.empty()) report.worst_violation = 0.0;
  report.holds = report.worst_violation <= tolerance;
  return report;
}

InterlacingReport check_interlacing(const Eigen::MatrixXd& a, const std::vector<std::int64_t>& keep) {
  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      sub(r, c) = a(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
    }
  }
  const auto la = eigenvalues(a);
  const auto lb = eigenvalues(sub);
  double norm = 0.0;
  for (double x : la) norm = std::max(norm, std::abs(x));
  return check_interlacing_spectra(la, lb, 1e-9 * std::max(1.0, norm));
}

WeylReport check_weyl(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("check_weyl: shape mismatch");
  }
  const auto la = eigenvalues(a);
  const auto lb = eigenvalues(b);
  const auto lc = eigenvalues(a - b);
  WeylReport report;
  for (std::size_t i = 0; i < la.size(); ++i) {
    report.max_shift = std::max(report.max_shift, std::abs(la[i] - lb[i]));
  }
  if (!lc.empty()) report.perturbation_norm = std::max(std::abs(lc.front()), std::abs(lc.back()));
  double scale = 1.0;
  for (double x : la) scale = std::max(scale, std::abs(x));
  report.holds = report.max_shift <= report.perturbation_norm + 1e-9 * scale;
  return report;
}

namespace {

void require_weights(std::span<const double> c, std::int64_t n) {
  if (static_cast<std::int64_t>(c.size()) != n) {
    throw std::invalid_argument("norm_upper_bound: expected " + std::to_string(n) + " weights");
  }
  for (double x : c) {
    if (!(x > 0.0)) throw std::invalid_argument("norm_upper_bound: weights must be positive");
  }
}

}  // namespace

double norm_upper_bound(const Eigen::MatrixXd& a, std::span<const double> c) {
  require_weights(c, a.rows());
  double bound = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) row += c[static_cast<std::size_t>(j)] * std::abs(a(i, j));
    bound = std::max(bound, row / c[static_cast<std::size_t>(i)]);
  }
  return bound;
}

double norm_upper_bound(const SparseAdjacency& a, std::span<const double> c) {
  require_weights(c, a.size);
  double bound = 0.0;
  for (std::int64_t i = 0; i < a.size; ++i) {
    double row = 0.0;
    for (auto p = a.row_ptr[static_cast<std::size_t>(i)]; p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
      row += c[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(p)])] *
             static_cast<double>(a.values[static_cast<std::size_t>(p)]);
    }
    bound = std::max(bound, row / c[static_cast<std::size_t>(i)]);
  }
  return bound;
}

double figure1_scale(std::int64_t m, std::int64_t n) {
  const double p = 2.0 * static_cast<double>(m) / static_cast<double>(n);
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("figure1_scale: need 0 < 2m/n < 1");
  return 1.0 / std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

Histogram histogram(const SpectralMeasure& measure, int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double x : measure.atoms) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<int>(std::floor((x - lo) / (hi - lo) * bins));
    b = std::min(b, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

void write_spectrum_csv(std::ostream& out, const SpectralMeasure& measure) {
  out << "# scale=" << std::setprecision(17) << measure.scale << " label=" << measure.scale_label
      << " n=" << measure.size() << '\n';
  out << "eigenvalue\n";
  for (double x : measure.atoms) out << x << '\n';
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "lo,hi,count\n" << std::setprecision(17);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.counts[b] << '\n';
  }
}

}  // namespace paspec
