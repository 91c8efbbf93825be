#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "paspec/spectra.hpp"

using namespace paspec;

namespace {

MultiGraph g22() { return MultiGraph::from_pairs(2, {{1, 1}, {1, 1}, {1, 2}, {2, 2}}); }

MultiGraph star(Vertex d) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 2; v <= d + 1; ++v) pairs.emplace_back(1, v);
  return MultiGraph::from_pairs(d + 1, pairs);
}

SpectralMeasure measure(std::vector<double> atoms) {
  std::sort(atoms.rbegin(), atoms.rend());
  return SpectralMeasure{atoms};
}

// sup over closed intervals with endpoints at atoms, by brute force.
double brute_interval_distance(const SpectralMeasure& mu, const SpectralMeasure& eta) {
  std::vector<double> pts = mu.atoms;
  pts.insert(pts.end(), eta.atoms.begin(), eta.atoms.end());
  std::sort(pts.begin(), pts.end());
  auto mass = [](const SpectralMeasure& m, double a, double b) {
    double c = 0;
    for (double x : m.atoms) c += (x >= a && x <= b);
    return c / static_cast<double>(m.atoms.size());
  };
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      best = std::max(best, std::abs(mass(mu, pts[i], pts[j]) - mass(eta, pts[i], pts[j])));
    }
  }
  return best;
}

Eigen::MatrixXd random_symmetric_int(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("adjacency of the G_{2,2} example") {
  const auto a = adjacency(g22());
  IntMatrix expect(2, 2);
  expect << 2, 1, 1, 1;
  CHECK(a.entries == expect);
  const auto empty = adjacency(MultiGraph(3, 1, {}));
  CHECK(empty.entries.isZero());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate({2, 100, seed});
    CHECK(adjacency(g).entries.trace() == g.loop_count());
  }
}

TEST_CASE("eigen_full") {
  SUBCASE("G_{2,2}: (3 +- sqrt 5)/2 and sum of squares 7") {
    const auto dec = eigen_full(adjacency(g22()), true);
    CHECK(dec.measure.atoms[0] == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(dec.measure.atoms[1] == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(esd_moment(dec.measure, 2) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(max_residual(adjacency(g22()).to_double(), dec) < 1e-12);
  }
  SUBCASE("star spectrum is +-sqrt(d) and zeros") {
    const auto atoms = eigen_full(adjacency(star(9))).measure.atoms;
    CHECK(atoms.front() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(atoms.back() == doctest::Approx(-3.0).epsilon(1e-12));
    for (std::size_t i = 1; i + 1 < atoms.size(); ++i) CHECK(std::abs(atoms[i]) < 1e-12);
  }
  SUBCASE("permutation invariance") {
    std::mt19937_64 rng(4);
    const auto a = random_symmetric_int(7, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> p(7);
    p.indices() << 3, 0, 6, 2, 5, 1, 4;
    const Eigen::MatrixXd b = p * a * p.transpose();
    const auto x = eigenvalues(a);
    const auto y = eigenvalues(b);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));
  }
  SUBCASE("residuals on a sampled graph") {
    const auto a = adjacency(generate({3, 300, 2}));
    const auto dec = eigen_full(a, true);
    CHECK(max_residual(a.to_double(), dec) <= 1e-9 * std::abs(dec.measure.atoms.front()));
    const auto& atoms = dec.measure.atoms;
    CHECK(std::is_sorted(atoms.rbegin(), atoms.rend()));
  }
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(eigen_full(bad), std::invalid_argument);
}

TEST_CASE("walk counts") {
  CHECK(trace_power_walks(g22(), 2).value == 7);
  CHECK(trace_power_walks(g22(), 0).value == 2);
  CHECK(esd_moment(eigen_full(adjacency(g22())).measure, 0) == doctest::Approx(1.0));
  CHECK(trace_power_walks(MultiGraph::from_pairs(2, {{1, 2}}), 3).value == 0);
  SUBCASE("agrees with the integer matrix power") {
    const auto g = generate({2, 30, 5});
    const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> a = adjacency(g).entries.cast<long long>();
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> p = a;
    for (int k = 1; k <= 6; ++k) {
      CHECK(trace_power_walks(g, k).value == BigInt(p.trace()));
      p = p * a;
    }
  }
  SUBCASE("big integer fallback") {
    const auto w = trace_power_walks(generate({5, 200, 1}), 40);
    CHECK(w.big_integer_fallback);
    CHECK(w.value > BigInt(std::numeric_limits<std::int64_t>::max()));
  }
}

TEST_CASE("trace identity against eigenvalues, k <= 8") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate({1 + static_cast<std::int64_t>(seed % 3), 120, seed});
    const auto atoms = eigen_full(adjacency(g)).measure.atoms;
    for (int k = 1; k <= 8; ++k) {
      double s = 0, abs_s = 0;
      for (double x : atoms) {
        s += std::pow(x, k);
        abs_s += std::pow(std::abs(x), k);
      }
      CHECK(std::abs(s - trace_power_walks(g, k).to_double()) <= 1e-8 * std::max(1.0, abs_s));
    }
  }
}

TEST_CASE("interval distance") {
  const auto a = measure({0.0, 1.0, 2.0});
  CHECK(interval_distance(a, a) == 0.0);
  CHECK(interval_distance(measure({0.0}), measure({1.0})) == doctest::Approx(1.0));
  CHECK(interval_distance(measure({0.0, 1.0}), measure({0.0})) == doctest::Approx(0.5));
  CHECK(interval_distance(measure({0.0, 1e-13}), measure({0.0, 0.0}), 1e-9) == 0.0);

  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> value(-4, 4);
  auto draw = [&]() {
    std::vector<double> x(static_cast<std::size_t>(size(rng)));
    for (auto& v : x) v = value(rng) * 0.5;
    return measure(x);
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = draw(), y = draw(), z = draw();
    const double dxy = interval_distance(x, y);
    CHECK(dxy == doctest::Approx(brute_interval_distance(x, y)).epsilon(1e-12));
    CHECK(dxy == doctest::Approx(interval_distance(y, x)).epsilon(1e-12));
    CHECK(dxy >= 0.0);
    CHECK(dxy <= 1.0 + 1e-12);
    CHECK(interval_distance(x, z) <= dxy + interval_distance(y, z) + 1e-12);
  }
}

TEST_CASE("interlacing") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_symmetric_int(6, rng);
    std::vector<std::int64_t> all = {0, 1, 2, 3, 4, 5};
    CHECK(check_interlacing(a, all).holds);
    std::vector<std::int64_t> keep;
    for (std::int64_t i = 0; i < 6; ++i) {
      if (i != trial % 6) keep.push_back(i);
    }
    CHECK(check_interlacing(a, keep).holds);
  }
  const auto g = generate({2, 200, 6});
  const auto full = eigen_full(adjacency(g)).measure.atoms;
  const auto part = eigen_full(adjacency(truncate(g, {0.2}))).measure.atoms;
  CHECK(check_interlacing_spectra(full, part, 1e-9 * std::abs(full.front())).holds);
  std::vector<double> b = part;
  b.front() = full.front() + 1.0;
  CHECK_FALSE(check_interlacing_spectra(full, b, 1e-9).holds);
}

TEST_CASE("Weyl and the row-sum norm bound") {
  std::mt19937_64 rng(8);
  const auto a = random_symmetric_int(8, rng);
  const auto b = random_symmetric_int(8, rng);
  const auto w = check_weyl(a, b);
  CHECK(w.holds);
  CHECK(w.max_shift <= w.perturbation_norm + 1e-12);

  Eigen::MatrixXd nonneg = a.cwiseAbs();
  std::vector<double> ones(8, 1.0);
  CHECK(norm_upper_bound(nonneg, ones) == doctest::Approx(nonneg.rowwise().sum().maxCoeff()));

  const auto s = adjacency(star(16)).to_double();
  std::vector<double> c(17, 1.0);
  c[0] = 4.0;
  CHECK(norm_upper_bound(s, c) == doctest::Approx(4.0));

  const auto g = generate({3, 500, 4});
  std::vector<double> weights;
  for (Vertex i = 1; i <= 500; ++i) weights.push_back(std::pow(500.0 / static_cast<double>(i), 0.25));
  const double bound = norm_upper_bound(sparse_adjacency(g), weights);
  CHECK(bound >= eigen_full(adjacency(g)).measure.atoms.front());
  CHECK(bound == doctest::Approx(norm_upper_bound(adjacency(g).to_double(), weights)));
  c[3] = 0.0;
  CHECK_THROWS_AS(norm_upper_bound(s, c), std::invalid_argument);
}

TEST_CASE("binomial scaling, histogram and CSV") {
  CHECK(figure1_scale(5, 6000) == doctest::Approx(1.0 / std::sqrt(6000.0 * (10.0 / 6000.0) * (1 - 10.0 / 6000.0))));
  const auto m = measure({-1.0, 0.0, 0.1, 0.9, 5.0});
  const auto h = histogram(m, 2, -1.0, 1.0);
  CHECK(h.counts == std::vector<std::int64_t>{1, 3});
  const auto scaled = m.scaled(2.0, "double");
  CHECK(scaled.atoms.front() == 10.0);
  CHECK(scaled.scale == 2.0);
  std::ostringstream out;
  write_spectrum_csv(out, scaled);
  CHECK(out.str().find("scale=2") != std::string::npos);
  CHECK(out.str().find("label=double") != std::string::npos);
}
