#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paspec/spectra.hpp"

namespace paspec {

inline constexpr int kMaxDensityMoments = 8;

struct DensityParams {
  double half_width = 4.0;
  int gridsize = 2048;
  double sigma = 0.15;
};

/// sigma = 0.15 sqrt(C_2), L = 4 sqrt(C_2), 2048 grid points.
DensityParams default_density_params(std::span<const double> moments);

struct DensityEstimate {
  /// Symmetric uniform grid on [-L, L].
  std::vector<double> grid;
  std::vector<double> values;
  double step = 0.0;
  int K = 0;
  double sigma = 0.0;
  /// sup_t |P(t)| exp(-sigma^2 t^2 / 2), where P is the Taylor characteristic function.
  double damped_sup = 0.0;
  /// Set when the damped polynomial exceeds 1 somewhere.
  std::optional<std::string> warning;
  std::optional<double> suggested_sigma;
  /// Mass removed by clipping negative values, before renormalizing.
  double clipped_mass = 0.0;

  double mass() const;
};

/// Inverse Fourier transform of the damped truncated characteristic function
///   P(t) = sum_k (it)^k C_k / k!,  f(x) = (1/2pi) int P(t) exp(-sigma^2 t^2/2) exp(-itx) dt,
/// evaluated on the grid by Simpson quadrature in t. The real part is kept,
/// negative values are clipped and the result renormalized to unit mass.
DensityEstimate reconstruct_density(std::span<const double> moments, const DensityParams& params);

/// L1 distance between bin masses of the estimate and the measure on `bins`
/// equal bins over the estimate's grid range. Measure atoms outside the range
/// count fully toward the distance.
double compare_density_to_esd(const DensityEstimate& est, const SpectralMeasure& measure, int bins);

void write_density_csv(std::ostream& out, const DensityEstimate& est);

}  // namespace paspec
