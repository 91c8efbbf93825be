#include "paspec/density.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace paspec {

namespace {

struct TaylorCf {
  std::vector<double> even;  // coefficients of t^k in Re P, k even
  std::vector<double> odd;   // coefficients of t^k in Im P, k odd

  explicit TaylorCf(std::span<const double> moments) : even(moments.size(), 0.0), odd(moments.size(), 0.0) {
    double factorial = 1.0;
    for (std::size_t k = 0; k < moments.size(); ++k) {
      if (k > 0) factorial *= static_cast<double>(k);
      const double c = moments[k] / factorial;
      // (it)^k = i^k t^k; i^k cycles 1, i, -1, -i
      switch (k % 4) {
        case 0: even[k] = c; break;
        case 1: odd[k] = c; break;
        case 2: even[k] = -c; break;
        default: odd[k] = -c; break;
      }
    }
  }

  void eval(double t, double& re, double& im) const {
    re = 0.0;
    im = 0.0;
    for (std::size_t k = even.size(); k-- > 0;) {
      re = re * t + even[k];
      im = im * t + odd[k];
    }
  }
};

double damped_sup(const TaylorCf& p, double sigma, double t_max, double dt) {
  double sup = 0.0;
  for (double t = 0.0; t <= t_max; t += dt) {
    double re;
    double im;
    p.eval(t, re, im);
    sup = std::max(sup, std::hypot(re, im) * std::exp(-0.5 * sigma * sigma * t * t));
  }
  return sup;
}

// Smallest t beyond which |P(t)| exp(-sigma^2 t^2/2) stays below `floor`.
double cutoff(const TaylorCf& p, double sigma, double floor) {
  const double hard = 60.0 / sigma;
  const double dt = 0.01 / sigma;
  double last_large = 0.0;
  for (double t = 0.0; t <= hard; t += dt) {
    double re;
    double im;
    p.eval(t, re, im);
    if (std::hypot(re, im) * std::exp(-0.5 * sigma * sigma * t * t) >= floor) last_large = t;
  }
  return std::min(hard, last_large + 2.0 / sigma);
}

}  // namespace

DensityParams default_density_params(std::span<const double> moments) {
  if (moments.size() < 3 || !(moments[2] > 0.0)) {
    throw std::invalid_argument("default_density_params: need a positive second moment");
  }
  const double root = std::sqrt(moments[2]);
  DensityParams p;
  p.sigma = 0.15 * root;
  p.half_width = 4.0 * root;
  p.gridsize = 2048;
  return p;
}

double DensityEstimate::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * step;
}

DensityEstimate reconstruct_density(std::span<const double> moments, const DensityParams& params) {
  if (moments.empty()) throw std::invalid_argument("reconstruct_density: empty moment table");
  if (static_cast<int>(moments.size()) - 1 > kMaxDensityMoments) {
    throw std::invalid_argument("reconstruct_density: at most " + std::to_string(kMaxDensityMoments) +
                                " moments beyond C_0");
  }
  if (!(params.sigma > 0.0) || !(params.half_width > 0.0) || params.gridsize < 3) {
    throw std::invalid_argument("reconstruct_density: need sigma > 0, L > 0, gridsize >= 3");
  }
  const TaylorCf p(moments);
  const double sigma = params.sigma;
  const double big_l = params.half_width;
  const int n = params.gridsize;

  DensityEstimate est;
  est.K = static_cast<int>(moments.size()) - 1;
  est.sigma = sigma;
  est.step = 2.0 * big_l / (n - 1);
  est.grid.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    est.grid[static_cast<std::size_t>(j)] = static_cast<double>(2 * j - (n - 1)) * (big_l / (n - 1));
  }

  const double t_max = cutoff(p, sigma, 1e-16);
  est.damped_sup = damped_sup(p, sigma, t_max, 0.01 / sigma);
  if (est.damped_sup > 1.0 + 1e-12) {
    for (int j = 1; j <= 60; ++j) {
      const double s = sigma * std::pow(1.25, j);
      if (damped_sup(p, s, cutoff(p, s, 1e-16), 0.01 / s) <= 1.0 + 1e-12) {
        est.suggested_sigma = s;
        break;
      }
    }
    std::string msg = "damped Taylor characteristic function reaches " + std::to_string(est.damped_sup) +
                      " > 1; the polynomial tail outgrows the damping";
    if (est.suggested_sigma) msg += "; try sigma >= " + std::to_string(*est.suggested_sigma);
    est.warning = msg;
  }

  // Simpson in t on [0, t_max]; the integrand is even in t.
  const double dt_target = std::min(std::numbers::pi / (16.0 * big_l), 0.05 / sigma);
  int intervals = static_cast<int>(std::ceil(t_max / dt_target));
  intervals = std::clamp(intervals + (intervals % 2), 2, 400000);
  const double dt = t_max / intervals;
  std::vector<double> t_nodes(static_cast<std::size_t>(intervals) + 1);
  std::vector<double> re_w(t_nodes.size());
  std::vector<double> im_w(t_nodes.size());
  for (int i = 0; i <= intervals; ++i) {
    const double t = i * dt;
    double re;
    double im;
    p.eval(t, re, im);
    const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double damp = std::exp(-0.5 * sigma * sigma * t * t) * weight * dt / 3.0;
    t_nodes[static_cast<std::size_t>(i)] = t;
    re_w[static_cast<std::size_t>(i)] = re * damp;
    im_w[static_cast<std::size_t>(i)] = im * damp;
  }

  est.values.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double x = est.grid[static_cast<std::size_t>(j)];
    double acc = 0.0;
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
      const double tx = t_nodes[i] * x;
      acc += re_w[i] * std::cos(tx) + im_w[i] * std::sin(tx);
    }
    est.values[static_cast<std::size_t>(j)] = acc / std::numbers::pi;
  }

  double positive = 0.0;
  for (double& v : est.values) {
    if (v < 0.0) {
      est.clipped_mass -= v * est.step;
      v = 0.0;
    }
    positive += v;
  }
  positive *= est.step;
  if (!(positive > 0.0)) throw std::runtime_error("reconstruct_density: no positive mass on the grid");
  for (double& v : est.values) v /= positive;
  return est;
}

double compare_density_to_esd(const DensityEstimate& est, const SpectralMeasure& measure, int bins) {
  if (bins < 1) throw std::invalid_argument("compare_density_to_esd: bins must be >= 1");
  if (est.grid.empty() || measure.atoms.empty()) {
    throw std::invalid_argument("compare_density_to_esd: empty input");
  }
  const double lo = est.grid.front();
  const double hi = est.grid.back();
  const double width = (hi - lo) / bins;
  auto bin_of = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - lo) / width)), 0, bins - 1); };
  std::vector<double> p(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> q(static_cast<std::size_t>(bins), 0.0);
  for (std::size_t j = 0; j < est.grid.size(); ++j) {
    p[static_cast<std::size_t>(bin_of(est.grid[j]))] += est.values[j] * est.step;
  }
  const double w = 1.0 / static_cast<double>(measure.atoms.size());
  double outside = 0.0;
  for (double x : measure.atoms) {
    if (x < lo || x > hi) {
      outside += w;
    } else {
      q[static_cast<std::size_t>(bin_of(x))] += w;
    }
  }
  double l1 = outside;
  for (int b = 0; b < bins; ++b) l1 += std::abs(p[static_cast<std::size_t>(b)] - q[static_cast<std::size_t>(b)]);
  return l1;
}

void write_density_csv(std::ostream& out, const DensityEstimate& est) {
  out << "# K=" << est.K << " sigma=" << std::setprecision(17) << est.sigma << '\n';
  out << "x,density\n";
  for (std::size_t j = 0; j < est.grid.size(); ++j) out << est.grid[j] << ',' << est.values[j] << '\n';
}

}  // namespace paspec
