#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paspec/graph.hpp"

namespace paspec {

/// Experiment parameters. Text form is one `key = value` per line with `#`
/// comments; see config_keys() for the accepted keys.
struct ExperimentConfig {
  std::string experiment = "generate";
  std::int64_t m = 2;
  std::int64_t n = 1000;
  /// Truncation; unset means the untruncated graph.
  std::optional<double> epsilon;
  int K = 4;
  int replicates = 1;
  std::uint64_t base_seed = 1;
  std::string output_dir = "out";

  // threshold overrides for the star decomposition
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> t_thresh;
  std::optional<std::int64_t> k_thresh;
  std::optional<std::int64_t> b_thresh;

  /// Eigenvalue scaling: "none", "figure1" (1/sqrt(np(1-p))) or "sqrt-m" (1/sqrt(m)).
  std::string normalize = "none";
  int bins = 100;
  std::optional<double> sigma;
  std::optional<double> half_width;
  int gridsize = 2048;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
  /// 1-based line of the offending entry, 0 when not tied to a line.
  int line;
};

const std::vector<std::string>& config_keys();
const std::vector<std::string>& experiment_ids();

/// Applies one key/value pair; throws ConfigError for unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line = 0);
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});
void validate_config(const ExperimentConfig& cfg);
/// Canonical `key = value` text, keys in config_keys() order, unset keys omitted.
std::string config_to_text(const ExperimentConfig& cfg);
/// FNV-1a 64 of config_to_text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Worker count from PA_WORKERS, default 1.
int worker_count();

struct ReplicateOutcome {
  bool ok = true;
  std::string error;
};

/// Runs task(r) for r = 0..count-1 on `workers` threads. Exceptions are caught
/// per replicate; outcomes are returned in replicate order.
std::vector<ReplicateOutcome> run_replicates(int count, int workers, const std::function<void(int)>& task);

struct MomentComparisonRow {
  int k = 0;
  double empirical_mean = 0.0;
  double empirical_stderr = 0.0;
  double theory = 0.0;
  /// empirical / theory; NaN when the theory value is 0 or unknown.
  double ratio = 0.0;
  std::vector<double> per_replicate;
};

/// Empirical k-th moments (walk counts / live vertices) for k = 1..K against
/// C(k, eps, m) when truncated, or 2m, 2m(m+1) ln n for k = 2, 4 otherwise.
std::vector<MomentComparisonRow> moment_comparison_report(const ExperimentConfig& cfg);

/// Theory value used by moment_comparison_report.
double moment_theory_value(int k, const ExperimentConfig& cfg);

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> artifacts;
  std::vector<std::string> failures;
  std::string summary;
};

RunResult run(const ExperimentConfig& cfg);

}  // namespace paspec
