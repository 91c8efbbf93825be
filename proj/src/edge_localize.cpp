#include "paspec/edge_localize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace paspec {

EdgeLawReport edge_law_report(const std::vector<EigenPair>& pairs, const TopDegrees& top) {
  EdgeLawReport report;
  const std::size_t k = std::min(pairs.size(), top.entries.size());
  std::vector<double> ratios;
  for (std::size_t i = 0; i < k; ++i) {
    EdgeLawRow row;
    row.i = static_cast<int>(i) + 1;
    row.lambda = pairs[i].value;
    row.sqrt_delta = std::sqrt(static_cast<double>(top.entries[i].degree));
    row.ratio = row.sqrt_delta > 0 ? row.lambda / row.sqrt_delta : std::numeric_limits<double>::quiet_NaN();
    ratios.push_back(row.ratio);
    report.rows.push_back(row);
  }
  if (!ratios.empty()) {
    report.min_ratio = *std::min_element(ratios.begin(), ratios.end());
    report.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    report.median_ratio = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return report;
}

EdgeLawReport edge_law_report(const MultiGraph& g, int K) {
  return edge_law_report(top_eigenpairs(g, K), top_degrees(g, static_cast<std::size_t>(K)));
}

std::vector<LocalizationRow> localization_report(const std::vector<EigenPair>& pairs, const TopDegrees& top,
                                                 Vertex vertex_offset) {
  std::vector<LocalizationRow> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Eigen::VectorXd mag = pairs[i].vector.cwiseAbs();
    LocalizationRow row;
    row.i = static_cast<int>(i) + 1;
    Eigen::Index arg = 0;
    row.sup_norm = mag.maxCoeff(&arg);
    row.argmax = vertex_offset + arg;
    double second = 0.0;
    for (Eigen::Index r = 0; r < mag.size(); ++r) {
      if (r != arg) second = std::max(second, mag(r));
    }
    row.second_largest = second;
    if (i < top.entries.size()) {
      row.hub = top.entries[i].vertex;
      row.on_hub = row.hub == row.argmax;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<LocalizationRow> localization_report(const MultiGraph& g, int K) {
  return localization_report(top_eigenpairs(g, K), top_degrees(g, static_cast<std::size_t>(K)),
                             g.vertex_offset());
}

namespace {

std::int64_t ceil_power(Vertex n, double exponent) {
  const double x = std::pow(static_cast<double>(n), exponent);
  return static_cast<std::int64_t>(std::ceil(x - 1e-9 * x));
}

}  // namespace

DecompositionParams default_decomposition_params(Vertex n) {
  if (n < 1) throw std::invalid_argument("default_decomposition_params: n must be >= 1");
  DecompositionParams p;
  p.s = ceil_power(n, 1.0 / 7.0);
  p.t_thresh = ceil_power(n, 13.0 / 25.0);
  p.k = ceil_power(n, 1.0 / 25.0);
  p.b = ceil_power(n, 1.0 / 20.0);
  return p;
}

StarDecomposition decompose(const MultiGraph& g, const DecompositionParams& params) {
  const Vertex s = params.s;
  const Vertex t = params.t_thresh;
  if (!(s >= g.vertex_offset() && s < t && t <= g.n())) {
    throw std::invalid_argument("decompose: need vertex_offset <= s < t <= n, got s = " + std::to_string(s) +
                                ", t = " + std::to_string(t) + ", n = " + std::to_string(g.n()));
  }
  const Vertex offset = g.vertex_offset();
  std::vector<std::int64_t> cross(static_cast<std::size_t>(g.n() + 1), 0);
  for (const Edge& e : g.edges()) {
    if (e.u <= s && e.v > t) ++cross[static_cast<std::size_t>(e.v)];
  }
  std::vector<Edge> e1, e2, e3, e4, rest;
  for (const Edge& e : g.edges()) {
    if (e.v <= t) e1.push_back(e);
    if (e.u >= s) e2.push_back(e);
    if (e.u <= s && e.v > t) {
      if (cross[static_cast<std::size_t>(e.v)] >= 2) {
        e3.push_back(e);
      } else {
        e4.push_back(e);
        continue;
      }
    }
    rest.push_back(e);
  }
  StarDecomposition dec;
  dec.params = params;
  dec.g1 = MultiGraph(t, offset, std::move(e1), g.m(), g.seed());
  dec.g2 = MultiGraph(g.n(), s, std::move(e2), g.m(), g.seed());
  dec.g3 = MultiGraph(g.n(), offset, std::move(e3), g.m(), g.seed());
  dec.g4 = MultiGraph(g.n(), offset, std::move(e4), g.m(), g.seed());
  dec.remainder = MultiGraph(g.n(), offset, std::move(rest), g.m(), g.seed());

  const auto d1 = dec.g1.degree_vector();
  const auto d3 = dec.g3.degree_vector();
  dec.loss.assign(static_cast<std::size_t>(s), 0);
  for (Vertex u = offset; u <= s; ++u) {
    const auto idx = static_cast<std::size_t>(u - offset);
    dec.loss[static_cast<std::size_t>(u - 1)] = d1[idx] + d3[idx];
  }
  return dec;
}

bool is_star_union(const MultiGraph& g4, Vertex s) {
  std::vector<std::int64_t> leaf_uses(static_cast<std::size_t>(g4.n() + 1), 0);
  for (const Edge& e : g4.edges()) {
    if (e.u > s || e.v <= s) return false;
    if (++leaf_uses[static_cast<std::size_t>(e.v)] > 1) return false;
  }
  return true;
}

bool degree_identity_holds(const MultiGraph& g, const StarDecomposition& dec) {
  const auto d = g.degree_vector();
  const auto d4 = dec.g4.degree_vector();
  for (Vertex u = g.vertex_offset(); u <= dec.params.s; ++u) {
    const auto idx = static_cast<std::size_t>(u - g.vertex_offset());
    if (d[idx] != d4[idx] + dec.loss[static_cast<std::size_t>(u - 1)]) return false;
  }
  return true;
}

namespace {

struct Star {
  Vertex center = 0;
  std::int64_t size = 0;
};

std::vector<Star> stars_of(const StarDecomposition& dec) {
  std::vector<Star> stars;
  const auto d4 = dec.g4.degree_vector();
  for (Vertex u = dec.g4.vertex_offset(); u <= dec.params.s; ++u) {
    const auto size = d4[static_cast<std::size_t>(u - dec.g4.vertex_offset())];
    if (size > 0) stars.push_back({u, size});
  }
  std::stable_sort(stars.begin(), stars.end(), [](const Star& a, const Star& b) { return a.size > b.size; });
  return stars;
}

// Descending spectrum of a disjoint star union on `vertices` vertices, first K values.
std::vector<double> star_spectrum_top(const std::vector<Star>& stars, std::int64_t vertices, int K) {
  std::vector<double> out;
  for (const Star& st : stars) {
    if (static_cast<int>(out.size()) == K) return out;
    out.push_back(std::sqrt(static_cast<double>(st.size)));
  }
  const std::int64_t zeros = vertices - 2 * static_cast<std::int64_t>(stars.size());
  for (std::int64_t z = 0; z < zeros && static_cast<int>(out.size()) < K; ++z) out.push_back(0.0);
  for (auto it = stars.rbegin(); it != stars.rend() && static_cast<int>(out.size()) < K; ++it) {
    out.push_back(-std::sqrt(static_cast<double>(it->size)));
  }
  return out;
}

}  // namespace

DecompositionReport decomposition_report(const MultiGraph& g, const StarDecomposition& dec, int K) {
  DecompositionReport report;
  report.norm_g1 = spectral_norm(sparse_adjacency(dec.g1));
  report.norm_g2 = spectral_norm(sparse_adjacency(dec.g2));
  report.norm_g3 = spectral_norm(sparse_adjacency(dec.g3));
  for (auto l : dec.loss) report.max_loss = std::max(report.max_loss, l);
  const auto stars = stars_of(dec);
  for (const Star& st : stars) report.star_sizes.push_back(st.size);
  for (int i = 0; i < K && i < static_cast<int>(stars.size()); ++i) {
    report.star_eigenvalues.push_back(std::sqrt(static_cast<double>(stars[static_cast<std::size_t>(i)].size)));
  }
  report.lambda_g4 = star_spectrum_top(stars, dec.g4.vertex_count(), K);
  for (const auto& pair : top_eigenpairs(g, K)) report.lambda_g.push_back(pair.value);
  for (std::size_t i = 0; i < report.lambda_g.size() && i < report.lambda_g4.size(); ++i) {
    report.max_shift = std::max(report.max_shift, std::abs(report.lambda_g[i] - report.lambda_g4[i]));
  }
  const double budget = report.norm_g1 + report.norm_g2 + report.norm_g3;
  const double scale = report.lambda_g.empty() ? 1.0 : std::max(1.0, std::abs(report.lambda_g.front()));
  report.weyl_holds = report.max_shift <= budget + 1e-8 * scale;
  report.degree_identity_holds = degree_identity_holds(g, dec);
  report.g4_is_star_union = is_star_union(dec.g4, dec.params.s);
  return report;
}

namespace {

DavisKahanCertificate finish_certificate(double sin_observed, double norm_c, double gap, double tol) {
  DavisKahanCertificate cert;
  cert.sin_observed = sin_observed;
  cert.perturbation_norm = norm_c;
  cert.gap = gap;
  if (gap <= 10.0 * tol) {
    cert.vacuous = true;
    cert.bound = std::numeric_limits<double>::infinity();
    cert.holds = true;
    return cert;
  }
  cert.bound = norm_c / gap;
  cert.holds = sin_observed <= cert.bound + tol;
  return cert;
}

double sin_angle(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  const Eigen::VectorXd vn = v.normalized();
  const Eigen::VectorXd wn = w.normalized();
  return (vn - vn.dot(wn) * wn).norm();
}

}  // namespace

DavisKahanCertificate davis_kahan_certificate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int i) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("davis_kahan_certificate: shape mismatch");
  }
  if (i < 1 || i > a.rows()) throw std::invalid_argument("davis_kahan_certificate: index out of range");
  const auto ea = eigen_full(a, true);
  const auto eb = eigen_full(b, true);
  const auto ec = eigenvalues(a - b);
  const double norm_c = ec.empty() ? 0.0 : std::max(std::abs(ec.front()), std::abs(ec.back()));
  const auto idx = static_cast<std::size_t>(i - 1);
  const double lambda = ea.measure.atoms[idx];
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < eb.measure.atoms.size(); ++j) {
    if (j != idx) gap = std::min(gap, std::abs(lambda - eb.measure.atoms[j]));
  }
  double norm_a = 1.0;
  for (double x : ea.measure.atoms) norm_a = std::max(norm_a, std::abs(x));
  const double s = sin_angle(ea.vectors.col(i - 1), eb.vectors.col(i - 1));
  return finish_certificate(s, norm_c, gap, 1e-9 * norm_a);
}

DavisKahanCertificate davis_kahan_star_certificate(const MultiGraph& g, const StarDecomposition& dec, int i) {
  const auto stars = stars_of(dec);
  if (i < 1 || i > static_cast<int>(stars.size())) {
    throw std::invalid_argument("davis_kahan_star_certificate: G4 has fewer than i stars");
  }
  const auto pairs = top_eigenpairs(g, i);
  const double lambda = pairs.back().value;
  const Star& star = stars[static_cast<std::size_t>(i - 1)];

  Eigen::VectorXd w = Eigen::VectorXd::Zero(g.vertex_count());
  const Vertex offset = g.vertex_offset();
  w(star.center - offset) = 1.0 / std::sqrt(2.0);
  const double leaf = 1.0 / std::sqrt(2.0 * static_cast<double>(star.size));
  for (const Edge& e : dec.g4.edges()) {
    if (e.u == star.center) w(e.v - offset) = leaf;
  }

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < stars.size(); ++j) {
    const double mu = std::sqrt(static_cast<double>(stars[j].size));
    if (j != static_cast<std::size_t>(i - 1)) gap = std::min(gap, std::abs(lambda - mu));
    gap = std::min(gap, std::abs(lambda + mu));
  }
  if (g.vertex_count() > 2 * static_cast<std::int64_t>(stars.size())) gap = std::min(gap, std::abs(lambda));

  const double norm_c = spectral_norm(sparse_adjacency(dec.remainder));
  const double tol = 1e-8 * std::max(1.0, std::abs(pairs.front().value));
  return finish_certificate(sin_angle(pairs.back().vector, w), norm_c, gap, tol);
}

DegreeGapReport degree_gap_report(const MultiGraph& g, int K) {
  if (K < 1) throw std::invalid_argument("degree_gap_report: K must be >= 1");
  DegreeGapReport report;
  const auto top = top_degrees(g, static_cast<std::size_t>(K) + 1);
  for (const auto& e : top.entries) report.deltas.push_back(e.degree);
  const auto n = static_cast<double>(g.n());
  const double factor = std::log(n) / std::sqrt(n);
  for (std::size_t i = 0; i + 1 < report.deltas.size() && static_cast<int>(i) < K; ++i) {
    report.normalized_gaps.push_back(static_cast<double>(report.deltas[i] - report.deltas[i + 1]) * factor);
  }
  report.delta1_bound = std::sqrt(n) * std::log(n);
  report.delta1_within_bound =
      !report.deltas.empty() && static_cast<double>(report.deltas.front()) <= report.delta1_bound;
  return report;
}

void write_eigenvector_csv(std::ostream& out, const std::vector<EigenPair>& pairs, Vertex vertex_offset) {
  out << "vertex";
  for (std::size_t i = 0; i < pairs.size(); ++i) out << ",v" << i + 1;
  out << '\n' << std::setprecision(17);
  if (pairs.empty()) return;
  for (Eigen::Index r = 0; r < pairs.front().vector.size(); ++r) {
    out << vertex_offset + r;
    for (const auto& p : pairs) out << ',' << p.vector(r);
    out << '\n';
  }
}

}  // namespace paspec
