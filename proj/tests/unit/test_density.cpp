#include <cmath>
#include <sstream>

#include "doctest.h"
#include "paspec/density.hpp"
#include "paspec/moment_theory.hpp"

using namespace paspec;

namespace {

double gaussian(double x, double s) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * M_PI)); }

double moment(const DensityEstimate& e, int k) {
  double s = 0;
  for (std::size_t i = 0; i < e.grid.size(); ++i) s += std::pow(e.grid[i], k) * e.values[i] * e.step;
  return s;
}

}  // namespace

TEST_CASE("point mass gives the damping kernel") {
  const std::vector<double> delta{1, 0, 0, 0, 0};
  DensityParams p;
  p.sigma = 0.2;
  p.half_width = 2.0;
  p.gridsize = 801;
  const auto e = reconstruct_density(delta, p);
  CHECK_FALSE(e.warning);
  CHECK(e.clipped_mass < 1e-12);
  double worst = 0;
  for (std::size_t i = 0; i < e.grid.size(); ++i) worst = std::max(worst, std::abs(e.values[i] - gaussian(e.grid[i], 0.2)));
  CHECK(worst < 1e-6);
  CHECK(e.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("even moments give an even density on a symmetric grid") {
  const auto table = build_moment_table(6, 0.1, 15);
  const auto params = default_density_params(table.moments);
  CHECK(params.sigma == doctest::Approx(0.15 * std::sqrt(table.moments[2])));
  CHECK(params.half_width == doctest::Approx(4 * std::sqrt(table.moments[2])));
  CHECK(params.gridsize == 2048);
  const auto e = reconstruct_density(table.moments, params);
  const auto n = e.grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(e.grid[i] == -e.grid[n - 1 - i]);
    CHECK(std::abs(e.values[i] - e.values[n - 1 - i]) <= 1e-12 * std::max(1.0, e.values[i]));
  }
  CHECK(e.mass() >= 0.98);
  CHECK(e.mass() <= 1.02);
}

TEST_CASE("second moment survives when clipping is inactive") {
  const std::vector<double> g{1, 0, 1, 0, 3};
  DensityParams p;
  p.sigma = 1.0;
  p.half_width = 10.0;
  p.gridsize = 2001;
  const auto e = reconstruct_density(g, p);
  REQUIRE(e.clipped_mass < 1e-9);
  CHECK(moment(e, 2) == doctest::Approx(1.0 + 1.0).epsilon(0.01));
  CHECK(std::abs(moment(e, 1)) < 1e-12);
}

TEST_CASE("divergent damping is flagged with a larger sigma") {
  const std::vector<double> g{1, 0, 1, 0, 3};
  DensityParams p;
  p.sigma = 0.1;
  const auto e = reconstruct_density(g, p);
  REQUIRE(e.warning);
  REQUIRE(e.suggested_sigma);
  CHECK(*e.suggested_sigma > 0.1);
  CHECK(e.damped_sup > 1.0);
  DensityParams q = p;
  q.sigma = *e.suggested_sigma;
  CHECK_FALSE(reconstruct_density(g, q).warning);
}

TEST_CASE("input validation") {
  const std::vector<double> long_table(10, 0.0);
  CHECK_THROWS_AS(reconstruct_density(long_table, {}), std::invalid_argument);
  DensityParams bad;
  bad.sigma = 0;
  const std::vector<double> delta{1, 0, 0};
  CHECK_THROWS_AS(reconstruct_density(delta, bad), std::invalid_argument);
}

TEST_CASE("density against a spectral measure") {
  const std::vector<double> delta{1, 0, 0, 0, 0};
  DensityParams p;
  p.sigma = 0.005;
  p.half_width = 1.0;
  p.gridsize = 4001;
  const auto e = reconstruct_density(delta, p);
  const SpectralMeasure at_zero{{0.0, 0.0, 0.0}};
  CHECK(compare_density_to_esd(e, at_zero, 11) < 1e-6);
  const SpectralMeasure far{{0.9}};
  CHECK(compare_density_to_esd(e, far, 11) == doctest::Approx(2.0).epsilon(1e-6));
  const SpectralMeasure outside{{5.0}};
  CHECK(compare_density_to_esd(e, outside, 11) == doctest::Approx(2.0).epsilon(1e-6));
  std::ostringstream out;
  write_density_csv(out, e);
  CHECK(out.str().find("\nx,density\n") != std::string::npos);
}
