#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "paspec/harness.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::int64_t> m, n;
  std::optional<double> eps;
  std::optional<int> K, replicates;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, normalize;
  std::optional<std::int64_t> s, t, k, b;
  std::optional<int> bins, gridsize;
  std::optional<double> sigma, L;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Config file of 'key = value' lines; flags override it");
  cmd->add_option("--m", f.m, "Edges per new vertex (default 2)");
  cmd->add_option("--n", f.n, "Number of vertices (default 1000)");
  cmd->add_option("--eps", f.eps, "Truncation fraction in (0,1); omit for the full graph");
  cmd->add_option("--K", f.K, "Moment order, eigenpair count or moment count (default 4)");
  cmd->add_option("--replicates", f.replicates, "Independent replicates (default 1)");
  cmd->add_option("--seed", f.seed, "Base seed; replicate r uses seed + r (default 1)");
  cmd->add_option("--out", f.out, "Output directory (default out)");
  cmd->add_option("--normalize", f.normalize, "Eigenvalue scaling: none, figure1 or sqrt-m")
      ->check(CLI::IsMember({"none", "figure1", "sqrt-m"}));
  cmd->add_option("--s", f.s, "Star decomposition threshold s");
  cmd->add_option("--t", f.t, "Star decomposition threshold t");
  cmd->add_option("--k", f.k, "Star decomposition threshold k");
  cmd->add_option("--b", f.b, "Star decomposition threshold b");
  cmd->add_option("--bins", f.bins, "Histogram bins (default 100)");
  cmd->add_option("--sigma", f.sigma, "Gaussian damping width for density reconstruction");
  cmd->add_option("--L", f.L, "Half-width of the density grid");
  cmd->add_option("--gridsize", f.gridsize, "Density grid points (default 2048)");
}

paspec::ExperimentConfig build_config(const std::string& experiment, const Flags& f) {
  paspec::ExperimentConfig cfg;
  if (f.config) cfg = paspec::load_config_file(*f.config);
  cfg.experiment = experiment;
  if (f.m) cfg.m = *f.m;
  if (f.n) cfg.n = *f.n;
  if (f.eps) cfg.epsilon = *f.eps;
  if (f.K) cfg.K = *f.K;
  if (f.replicates) cfg.replicates = *f.replicates;
  if (f.seed) cfg.base_seed = *f.seed;
  if (f.out) cfg.output_dir = *f.out;
  if (f.normalize) cfg.normalize = *f.normalize;
  if (f.s) cfg.s = *f.s;
  if (f.t) cfg.t_thresh = *f.t;
  if (f.k) cfg.k_thresh = *f.k;
  if (f.b) cfg.b_thresh = *f.b;
  if (f.bins) cfg.bins = *f.bins;
  if (f.sigma) cfg.sigma = *f.sigma;
  if (f.L) cfg.half_width = *f.L;
  if (f.gridsize) cfg.gridsize = *f.gridsize;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral experiments on preferential attachment graphs. Worker threads: PA_WORKERS."};
  app.require_subcommand(1);

  const std::map<std::string, std::string> descriptions = {
      {"generate", "Sample G_{m,n} (optionally truncated) and write edge lists"},
      {"spectrum", "Dense eigensolve; spectrum and histogram CSV"},
      {"moments", "Limiting moments C(k, eps, m) with Hamburger and Carleman checks"},
      {"truncate-compare", "Empirical walk moments against theory"},
      {"census", "Ordered two-edge path census against the first-moment formula"},
      {"reconstruct", "Density from limiting moments, compared to sampled spectra"},
      {"edge", "Top eigenvalues against square roots of top degrees"},
      {"localize", "Eigenvector localization and star decomposition"},
      {"verify-prob", "Exact-probability checks by exhaustive enumeration"},
  };

  std::map<std::string, Flags> flags;
  for (const auto& id : paspec::experiment_ids()) {
    auto* cmd = app.add_subcommand(id, descriptions.at(id));
    add_flags(cmd, flags[id]);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = build_config(experiment, flags[experiment]);
    paspec::validate_config(cfg);
    const auto result = paspec::run(cfg);
    std::cout << result.summary << '\n';
    for (const auto& a : result.artifacts) std::cout << "  wrote " << a << '\n';
    for (const auto& f : result.failures) std::cerr << "failure: " << f << '\n';
    return result.exit_code;
  } catch (const paspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
