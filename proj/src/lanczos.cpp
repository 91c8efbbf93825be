#include "paspec/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace paspec {

namespace {

void apply(const SparseAdjacency& a, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(x.size());
  a.multiply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
             std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
}

// Orthogonalizes w against the first k columns of v (two passes); returns the remaining norm.
double orthogonalize(const Eigen::MatrixXd& v, Eigen::Index k, Eigen::VectorXd& w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (k == 0) break;
    const Eigen::VectorXd h = v.leftCols(k).transpose() * w;
    w.noalias() -= v.leftCols(k) * h;
  }
  return w.norm();
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = u(rng);
  return x;
}

}  // namespace

std::vector<EigenPair> top_eigenpairs(const SparseAdjacency& a, int K, const LanczosOptions& options) {
  const Eigen::Index n = a.size;
  if (K < 1) throw std::invalid_argument("top_eigenpairs: K must be >= 1");
  if (K > n) throw std::invalid_argument("top_eigenpairs: K exceeds the matrix size");
  Eigen::Index p = options.basis_size > 0 ? options.basis_size : std::max<Eigen::Index>(2 * K + 20, 40);
  p = std::min(p, n);
  p = std::max<Eigen::Index>(p, K);

  std::mt19937_64 rng(options.seed);
  Eigen::MatrixXd v(n, p);
  Eigen::MatrixXd av(n, p);
  Eigen::Index filled = 0;
  Eigen::VectorXd next = random_vector(n, rng);
  next.normalize();
  Eigen::VectorXd w;

  std::vector<EigenPair> result;
  double worst = 0.0;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (filled < p) {
      v.col(filled) = next;
      apply(a, next, w);
      av.col(filled) = w;
      ++filled;
      if (filled == p) break;
      double beta = orthogonalize(v, filled, w);
      int attempts = 0;
      while (beta < 1e-10 * std::max(1.0, av.col(filled - 1).norm()) && attempts < 5) {
        // Invariant subspace found; continue with a fresh direction.
        w = random_vector(n, rng);
        beta = orthogonalize(v, filled, w);
        ++attempts;
      }
      next = w / beta;
    }

    Eigen::MatrixXd h = v.transpose() * av;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    // Ascending eigenvalues: the top K are the last columns.
    const Eigen::VectorXd& theta = solver.eigenvalues();
    const Eigen::MatrixXd& s = solver.eigenvectors();
    const double scale = std::max(std::abs(theta(p - 1)), std::abs(theta(0)));
    const double target = options.tolerance * std::max(scale, 1e-300);

    result.clear();
    worst = 0.0;
    Eigen::VectorXd first_unconverged;
    for (int i = 0; i < K; ++i) {
      const Eigen::Index col = p - 1 - i;
      EigenPair pair;
      pair.value = theta(col);
      pair.vector = v * s.col(col);
      const Eigen::VectorXd r = av * s.col(col) - pair.value * pair.vector;
      pair.residual = r.norm();
      const double norm = pair.vector.norm();
      pair.vector /= norm;
      worst = std::max(worst, pair.residual);
      if (pair.residual > target && first_unconverged.size() == 0) first_unconverged = r;
      result.push_back(std::move(pair));
    }
    if (worst <= target || p == n) break;
    if (restart == options.max_restarts) {
      throw NonConvergence("top_eigenpairs: no convergence after " + std::to_string(options.max_restarts) +
                               " restarts; worst residual " + std::to_string(worst),
                           worst);
    }

    // Thick restart: keep the leading Ritz vectors, extend along a residual.
    const Eigen::Index keep = std::min<Eigen::Index>(p - 1, std::max<Eigen::Index>(K + (p - K) / 2, K));
    const Eigen::MatrixXd sk = s.rightCols(keep);
    Eigen::MatrixXd v_new = v * sk;
    Eigen::MatrixXd av_new = av * sk;
    v.leftCols(keep) = v_new;
    av.leftCols(keep) = av_new;
    filled = keep;
    w = first_unconverged;
    double beta = orthogonalize(v, filled, w);
    if (beta < 1e-14) {
      w = random_vector(n, rng);
      beta = orthogonalize(v, filled, w);
    }
    next = w / beta;
  }

  for (auto& pair : result) {
    Eigen::Index arg = 0;
    pair.vector.cwiseAbs().maxCoeff(&arg);
    if (pair.vector(arg) < 0) pair.vector = -pair.vector;
    Eigen::VectorXd r;
    apply(a, pair.vector, r);
    pair.residual = (r - pair.value * pair.vector).norm();
  }
  return result;
}

std::vector<EigenPair> top_eigenpairs(const MultiGraph& g, int K, const LanczosOptions& options) {
  return top_eigenpairs(sparse_adjacency(g), K, options);
}

double spectral_norm(const SparseAdjacency& a) {
  if (a.size == 0 || a.nonzeros() == 0) return 0.0;
  return std::max(0.0, top_eigenpairs(a, 1).front().value);
}

}  // namespace paspec
