#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "paspec/graph.hpp"
#include "paspec/spectra.hpp"

namespace paspec {

struct EigenPair {
  double value = 0.0;
  /// Unit norm; sign fixed so the largest-magnitude coordinate is positive.
  Eigen::VectorXd vector;
  double residual = 0.0;
};

struct LanczosOptions {
  /// Residual target relative to |lambda_1|.
  double tolerance = 1e-8;
  int max_restarts = 500;
  /// Krylov basis size; 0 picks max(2K + 20, 40) capped at n.
  int basis_size = 0;
  std::uint64_t seed = 0x5eed;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

/// K algebraically largest eigenpairs of a symmetric sparse matrix by
/// thick-restarted Lanczos with full reorthogonalization.
std::vector<EigenPair> top_eigenpairs(const SparseAdjacency& a, int K, const LanczosOptions& options = {});
std::vector<EigenPair> top_eigenpairs(const MultiGraph& g, int K, const LanczosOptions& options = {});

/// ||A|| for an entrywise nonnegative adjacency, which equals lambda_1.
double spectral_norm(const SparseAdjacency& a);

}  // namespace paspec
