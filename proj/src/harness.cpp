#include "paspec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "paspec/census.hpp"
#include "paspec/density.hpp"
#include "paspec/edge_localize.hpp"
#include "paspec/exact_prob.hpp"
#include "paspec/moment_theory.hpp"
#include "paspec/spectra.hpp"

namespace paspec {

using nlohmann::json;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "m",        "n",        "epsilon",   "K",    "replicates", "base_seed", "output_dir",
      "s",          "t_thresh", "k_thresh", "b_thresh",  "normalize", "bins", "sigma",     "half_width",
      "gridsize"};
  return keys;
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"generate", "spectrum", "moments",  "truncate-compare", "census",
                                               "reconstruct", "edge",  "localize", "verify-prob"};
  return ids;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value, int line) {
  std::istringstream in(value);
  T x{};
  std::string extra;
  if (!(in >> x) || (in >> extra)) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + value + "'",
                      line);
  }
  return x;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line) {
  const auto where = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
  if (key == "experiment") {
    const auto& ids = experiment_ids();
    if (std::find(ids.begin(), ids.end(), value) == ids.end()) {
      throw ConfigError(where + "unknown experiment '" + value + "'", line);
    }
    cfg.experiment = value;
  } else if (key == "m") {
    cfg.m = parse_number<std::int64_t>(key, value, line);
  } else if (key == "n") {
    cfg.n = parse_number<std::int64_t>(key, value, line);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_number<double>(key, value, line);
  } else if (key == "K") {
    cfg.K = parse_number<int>(key, value, line);
  } else if (key == "replicates") {
    cfg.replicates = parse_number<int>(key, value, line);
  } else if (key == "base_seed") {
    cfg.base_seed = parse_number<std::uint64_t>(key, value, line);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "s") {
    cfg.s = parse_number<std::int64_t>(key, value, line);
  } else if (key == "t_thresh") {
    cfg.t_thresh = parse_number<std::int64_t>(key, value, line);
  } else if (key == "k_thresh") {
    cfg.k_thresh = parse_number<std::int64_t>(key, value, line);
  } else if (key == "b_thresh") {
    cfg.b_thresh = parse_number<std::int64_t>(key, value, line);
  } else if (key == "normalize") {
    if (value != "none" && value != "figure1" && value != "sqrt-m") {
      throw ConfigError(where + "normalize must be none, figure1 or sqrt-m", line);
    }
    cfg.normalize = value;
  } else if (key == "bins") {
    cfg.bins = parse_number<int>(key, value, line);
  } else if (key == "sigma") {
    cfg.sigma = parse_number<double>(key, value, line);
  } else if (key == "half_width") {
    cfg.half_width = parse_number<double>(key, value, line);
  } else if (key == "gridsize") {
    cfg.gridsize = parse_number<int>(key, value, line);
  } else {
    throw ConfigError(where + "unknown key '" + key + "'", line);
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'", line);
    }
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key or value", line);
    }
    set_config_value(base, key, value, line);
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

void validate_config(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) { throw ConfigError(what, 0); };
  if (cfg.m < 1) fail("m must be >= 1");
  if (cfg.n < 1) fail("n must be >= 1");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (cfg.K < 0) fail("K must be >= 0");
  if (cfg.replicates < 1) fail("replicates must be >= 1");
  if (cfg.bins < 1) fail("bins must be >= 1");
  if (cfg.gridsize < 3) fail("gridsize must be >= 3");
  if (cfg.sigma && !(*cfg.sigma > 0.0)) fail("sigma must be positive");
  if (cfg.half_width && !(*cfg.half_width > 0.0)) fail("half_width must be positive");
  if (cfg.experiment == "moments" && !cfg.epsilon) fail("moments needs epsilon");
  if (cfg.experiment == "reconstruct" && !cfg.epsilon) fail("reconstruct needs epsilon");
  if (cfg.experiment == "moments" && cfg.K > kMaxMomentOrder) fail("moments: K must be <= 12");
  if (cfg.experiment == "reconstruct" && cfg.K > kMaxDensityMoments) fail("reconstruct: K must be <= 8");
  if (cfg.experiment == "verify-prob" && cfg.n > ProcessAtlas::kMaxVertices) fail("verify-prob: n must be <= 8");
  if ((cfg.experiment == "edge" || cfg.experiment == "localize") && cfg.K < 1) fail("K must be >= 1");
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "experiment = " << cfg.experiment << '\n';
  out << "m = " << cfg.m << '\n';
  out << "n = " << cfg.n << '\n';
  if (cfg.epsilon) out << "epsilon = " << fmt(*cfg.epsilon) << '\n';
  out << "K = " << cfg.K << '\n';
  out << "replicates = " << cfg.replicates << '\n';
  out << "base_seed = " << cfg.base_seed << '\n';
  out << "output_dir = " << cfg.output_dir << '\n';
  if (cfg.s) out << "s = " << *cfg.s << '\n';
  if (cfg.t_thresh) out << "t_thresh = " << *cfg.t_thresh << '\n';
  if (cfg.k_thresh) out << "k_thresh = " << *cfg.k_thresh << '\n';
  if (cfg.b_thresh) out << "b_thresh = " << *cfg.b_thresh << '\n';
  out << "normalize = " << cfg.normalize << '\n';
  out << "bins = " << cfg.bins << '\n';
  if (cfg.sigma) out << "sigma = " << fmt(*cfg.sigma) << '\n';
  if (cfg.half_width) out << "half_width = " << fmt(*cfg.half_width) << '\n';
  out << "gridsize = " << cfg.gridsize << '\n';
  return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config_to_text(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("PA_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

std::vector<ReplicateOutcome> run_replicates(int count, int workers, const std::function<void(int)>& task) {
  std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(std::max(count, 0)));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next++; r < count; r = next++) {
      try {
        task(r);
      } catch (const std::exception& e) {
        outcomes[static_cast<std::size_t>(r)] = {false, e.what()};
      }
    }
  };
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    worker();
    return outcomes;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return outcomes;
}

namespace {

MultiGraph replicate_graph(const ExperimentConfig& cfg, int r) {
  MultiGraph g = generate({cfg.m, cfg.n, replicate_seed(cfg.base_seed, static_cast<std::uint64_t>(r))});
  if (cfg.epsilon) g = truncate(g, {*cfg.epsilon});
  return g;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

double spectrum_scale(const ExperimentConfig& cfg) {
  if (cfg.normalize == "figure1") return figure1_scale(cfg.m, cfg.n);
  if (cfg.normalize == "sqrt-m") return 1.0 / std::sqrt(static_cast<double>(cfg.m));
  return 1.0;
}

}  // namespace

double moment_theory_value(int k, const ExperimentConfig& cfg) {
  if (cfg.epsilon) return limit_moment_C(k, *cfg.epsilon, cfg.m);
  if (k % 2 == 1) return 0.0;
  const auto m = static_cast<double>(cfg.m);
  if (k == 0) return 1.0;
  if (k == 2) return 2.0 * m;
  if (k == 4) return 2.0 * m * (m + 1.0) * std::log(static_cast<double>(cfg.n));
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<MomentComparisonRow> moment_comparison_report(const ExperimentConfig& cfg) {
  if (cfg.K < 1) throw std::invalid_argument("moment_comparison_report: K must be >= 1");
  std::vector<std::vector<double>> per(static_cast<std::size_t>(cfg.replicates));
  const auto outcomes = run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    const auto a = sparse_adjacency(g);
    const auto v = static_cast<double>(g.vertex_count());
    auto& out = per[static_cast<std::size_t>(r)];
    for (int k = 1; k <= cfg.K; ++k) out.push_back(trace_power_walks(a, k).to_double() / v);
  });
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (!outcomes[r].ok) throw std::runtime_error("replicate " + std::to_string(r) + ": " + outcomes[r].error);
  }
  std::vector<MomentComparisonRow> rows;
  for (int k = 1; k <= cfg.K; ++k) {
    MomentComparisonRow row;
    row.k = k;
    for (const auto& p : per) row.per_replicate.push_back(p[static_cast<std::size_t>(k - 1)]);
    row.empirical_mean = mean_of(row.per_replicate);
    row.empirical_stderr = stderr_of(row.per_replicate);
    row.theory = moment_theory_value(k, cfg);
    row.ratio = (std::isfinite(row.theory) && row.theory != 0.0) ? row.empirical_mean / row.theory
                                                                 : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

namespace fs = std::filesystem;

struct RunContext {
  const ExperimentConfig& cfg;
  std::string hash;
  fs::path dir;
  RunResult result;
  std::mutex mutex;

  json header() const {
    json j;
    j["schema_version"] = 1;
    j["experiment"] = cfg.experiment;
    j["config_hash"] = hash;
    j["base_seed"] = cfg.base_seed;
    j["config"] = config_to_text(cfg);
    return j;
  }

  std::string csv_header() const {
    return "# experiment=" + cfg.experiment + " config_hash=" + hash + " base_seed=" + std::to_string(cfg.base_seed) +
           "\n";
  }

  std::uint64_t seed(int r) const { return replicate_seed(cfg.base_seed, static_cast<std::uint64_t>(r)); }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::lock_guard lock(mutex);
    result.artifacts.push_back(path.string());
  }

  void record(const std::vector<ReplicateOutcome>& outcomes) {
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      if (!outcomes[r].ok) {
        result.failures.push_back("replicate " + std::to_string(r) + " (seed " +
                                  std::to_string(seed(static_cast<int>(r))) + "): " + outcomes[r].error);
      }
    }
  }
};

json nan_safe(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void run_generate(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<json> records(static_cast<std::size_t>(cfg.replicates));
  ctx.record(run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    ctx.write("graph_r" + std::to_string(r) + ".txt", to_edge_list(g));
    json rec;
    rec["replicate"] = r;
    rec["seed"] = ctx.seed(r);
    rec["edges"] = g.edge_count();
    rec["loops"] = g.loop_count();
    rec["vertex_offset"] = g.vertex_offset();
    rec["birth_order_ok"] = cfg.epsilon ? json(nullptr) : json(check_birth_order(g, cfg.m));
    records[static_cast<std::size_t>(r)] = rec;
  }));
  json j = ctx.header();
  j["replicates"] = records;
  ctx.write("generate.json", j.dump(2) + "\n");
  ctx.result.summary = "generated " + std::to_string(cfg.replicates) + " graph(s)";
}

void run_spectrum(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.n > 8000) throw std::invalid_argument("spectrum: dense eigensolve is limited to n <= 8000");
  const double scale = spectrum_scale(cfg);
  std::vector<json> records(static_cast<std::size_t>(cfg.replicates));
  ctx.record(run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    const auto measure = eigen_full(adjacency(g)).measure.scaled(scale, cfg.normalize);
    std::ostringstream spec;
    spec << ctx.csv_header() << "# seed=" << ctx.seed(r) << '\n';
    write_spectrum_csv(spec, measure);
    ctx.write("spectrum_r" + std::to_string(r) + ".csv", spec.str());
    const double lo = measure.atoms.back();
    const double hi = measure.atoms.front();
    const double pad = 1e-9 * std::max(1.0, hi - lo);
    std::ostringstream hist;
    hist << ctx.csv_header() << "# seed=" << ctx.seed(r) << " scale=" << fmt(measure.scale) << '\n';
    write_histogram_csv(hist, histogram(measure, cfg.bins, lo - pad, hi + pad));
    ctx.write("histogram_r" + std::to_string(r) + ".csv", hist.str());
    json rec;
    rec["replicate"] = r;
    rec["seed"] = ctx.seed(r);
    rec["lambda_max"] = hi;
    rec["lambda_min"] = lo;
    rec["moment2"] = esd_moment(measure, 2);
    records[static_cast<std::size_t>(r)] = rec;
  }));
  json j = ctx.header();
  j["scale"] = scale;
  j["scale_label"] = cfg.normalize;
  j["replicates"] = records;
  ctx.write("spectrum.json", j.dump(2) + "\n");
  ctx.result.summary = "spectra for " + std::to_string(cfg.replicates) + " replicate(s)";
}

void run_moments(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto table = build_moment_table(cfg.K, *cfg.epsilon, cfg.m);
  std::ostringstream table_json;
  write_moment_table_json(table_json, table);
  json table_with_hash = json::parse(table_json.str());
  table_with_hash["config_hash"] = ctx.hash;
  table_with_hash["base_seed"] = cfg.base_seed;
  json j = ctx.header();
  j["table"] = json::parse(table_json.str());
  const auto ham = check_hamburger(table, cfg.K);
  j["hamburger"] = {{"psd", ham.psd}, {"min_eigenvalue", ham.min_eigenvalue}, {"norm", ham.norm}};
  const auto car = carleman_report(table, cfg.K);
  j["carleman"] = {{"ratios", car.ratios}, {"sup", car.sup}, {"nonincreasing", car.nonincreasing}};
  ctx.write("moment_table.json", table_with_hash.dump(2) + "\n");
  ctx.write("moments.json", j.dump(2) + "\n");
  if (!ham.psd) ctx.result.failures.push_back("Hankel matrix is not PSD");
  ctx.result.summary = "C(k) for k <= " + std::to_string(cfg.K);
}

void run_truncate_compare(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto rows = moment_comparison_report(cfg);
  std::ostringstream csv;
  csv << ctx.csv_header() << "k,empirical_mean,empirical_stderr,theory,ratio\n";
  csv.precision(12);
  json j = ctx.header();
  json arr = json::array();
  for (const auto& row : rows) {
    csv << row.k << ',' << row.empirical_mean << ',' << row.empirical_stderr << ',' << row.theory << ','
        << row.ratio << '\n';
    arr.push_back({{"k", row.k},
                   {"empirical_mean", row.empirical_mean},
                   {"empirical_stderr", row.empirical_stderr},
                   {"theory", nan_safe(row.theory)},
                   {"ratio", nan_safe(row.ratio)},
                   {"per_replicate", row.per_replicate}});
  }
  j["rows"] = arr;
  ctx.write("moment_comparison.csv", csv.str());
  ctx.write("moment_comparison.json", j.dump(2) + "\n");
  ctx.result.summary = "moment comparison for k <= " + std::to_string(cfg.K);
}

void run_census(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::ostringstream csv;
  csv << ctx.csv_header();
  json j = ctx.header();
  json arr = json::array();
  bool first = true;
  for (const auto& h : {path2_center_first(), path2_center_middle(), path2_center_last()}) {
    const auto report = census_vs_theory(h, {cfg.m, cfg.n, cfg.base_seed}, cfg.replicates);
    std::ostringstream part;
    write_census_csv(part, report);
    auto text = part.str();
    if (!first) text = text.substr(text.find('\n') + 1);
    first = false;
    csv << text;
    arr.push_back({{"H", h.to_string()},
                   {"formula", report.formula},
                   {"counts", report.counts},
                   {"mean", report.mean},
                   {"stderr", report.stderr_mean},
                   {"predicted", report.predicted},
                   {"ratio", report.ratio}});
  }
  j["reports"] = arr;
  ctx.write("census.csv", csv.str());
  ctx.write("census.json", j.dump(2) + "\n");
  ctx.result.summary = "census of the three two-edge path orderings";
}

void run_reconstruct(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  auto table = build_moment_table(cfg.K, *cfg.epsilon, cfg.m);
  const double scale = spectrum_scale(cfg);
  for (std::size_t k = 0; k < table.moments.size(); ++k) table.moments[k] *= std::pow(scale, static_cast<double>(k));
  auto params = default_density_params(table.moments);
  if (cfg.sigma) params.sigma = *cfg.sigma;
  if (cfg.half_width) params.half_width = *cfg.half_width;
  params.gridsize = cfg.gridsize;
  const auto est = reconstruct_density(table.moments, params);
  std::ostringstream csv;
  csv << ctx.csv_header();
  write_density_csv(csv, est);
  ctx.write("density.csv", csv.str());

  std::vector<double> l1(static_cast<std::size_t>(cfg.replicates), 0.0);
  if (cfg.n > 8000) throw std::invalid_argument("reconstruct: ESD comparison is limited to n <= 8000");
  ctx.record(run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    const auto measure = eigen_full(adjacency(g)).measure.scaled(scale, cfg.normalize);
    l1[static_cast<std::size_t>(r)] = compare_density_to_esd(est, measure, cfg.bins);
  }));
  json j = ctx.header();
  j["moments"] = table.moments;
  j["sigma"] = est.sigma;
  j["half_width"] = params.half_width;
  j["damped_sup"] = est.damped_sup;
  j["clipped_mass"] = est.clipped_mass;
  j["warning"] = est.warning ? json(*est.warning) : json(nullptr);
  j["suggested_sigma"] = est.suggested_sigma ? json(*est.suggested_sigma) : json(nullptr);
  j["esd_l1"] = l1;
  j["esd_l1_mean"] = mean_of(l1);
  ctx.write("reconstruct.json", j.dump(2) + "\n");
  ctx.result.summary = "density from K = " + std::to_string(cfg.K) + " moments, mean ESD L1 " + fmt(mean_of(l1));
}

void run_edge(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<json> records(static_cast<std::size_t>(cfg.replicates));
  std::vector<double> medians(static_cast<std::size_t>(cfg.replicates), 0.0);
  std::vector<char> in_band(static_cast<std::size_t>(cfg.replicates), 0);
  ctx.record(run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    const auto report = edge_law_report(g, cfg.K);
    const auto gaps = degree_gap_report(g, cfg.K);
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"i", row.i}, {"lambda", row.lambda}, {"sqrt_delta", row.sqrt_delta}, {"ratio", row.ratio}});
    }
    medians[static_cast<std::size_t>(r)] = report.median_ratio;
    in_band[static_cast<std::size_t>(r)] = report.min_ratio >= 0.85 && report.max_ratio <= 1.15;
    records[static_cast<std::size_t>(r)] = {{"replicate", r},
                                            {"seed", ctx.seed(r)},
                                            {"rows", rows},
                                            {"median_ratio", report.median_ratio},
                                            {"deltas", gaps.deltas},
                                            {"normalized_gaps", gaps.normalized_gaps},
                                            {"delta1_within_bound", gaps.delta1_within_bound}};
  }));
  json j = ctx.header();
  j["replicates"] = records;
  std::vector<double> sorted = medians;
  std::sort(sorted.begin(), sorted.end());
  j["aggregate"] = {{"median_of_medians", sorted[sorted.size() / 2]},
                    {"fraction_in_band", static_cast<double>(std::count(in_band.begin(), in_band.end(), 1)) /
                                             static_cast<double>(cfg.replicates)}};
  ctx.write("edge.json", j.dump(2) + "\n");
  ctx.result.summary = "edge eigenvalue law for i <= " + std::to_string(cfg.K);
}

void run_localize(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<json> records(static_cast<std::size_t>(cfg.replicates));
  ctx.record(run_replicates(cfg.replicates, worker_count(), [&](int r) {
    const MultiGraph g = replicate_graph(cfg, r);
    const auto pairs = top_eigenpairs(g, cfg.K);
    const auto top = top_degrees(g, static_cast<std::size_t>(cfg.K));
    const auto rows = localization_report(pairs, top, g.vertex_offset());
    if (r == 0) {
      std::ostringstream csv;
      csv << ctx.csv_header() << "# seed=" << ctx.seed(0) << '\n';
      write_eigenvector_csv(csv, pairs, g.vertex_offset());
      ctx.write("eigenvectors_r0.csv", csv.str());
    }
    auto params = default_decomposition_params(g.n());
    if (cfg.s) params.s = *cfg.s;
    if (cfg.t_thresh) params.t_thresh = *cfg.t_thresh;
    if (cfg.k_thresh) params.k = *cfg.k_thresh;
    if (cfg.b_thresh) params.b = *cfg.b_thresh;
    const auto dec = decompose(g, params);
    const auto rep = decomposition_report(g, dec, cfg.K);
    json loc = json::array();
    for (const auto& row : rows) {
      loc.push_back({{"i", row.i},
                     {"sup_norm", row.sup_norm},
                     {"second_largest", row.second_largest},
                     {"argmax", row.argmax},
                     {"hub", row.hub},
                     {"on_hub", row.on_hub}});
    }
    json rec = {{"replicate", r},
                {"seed", ctx.seed(r)},
                {"localization", loc},
                {"decomposition",
                 {{"s", params.s},
                  {"t", params.t_thresh},
                  {"norm_g1", rep.norm_g1},
                  {"norm_g2", rep.norm_g2},
                  {"norm_g3", rep.norm_g3},
                  {"max_loss", rep.max_loss},
                  {"star_eigenvalues", rep.star_eigenvalues},
                  {"lambda_g", rep.lambda_g},
                  {"max_shift", rep.max_shift},
                  {"weyl_holds", rep.weyl_holds},
                  {"degree_identity_holds", rep.degree_identity_holds},
                  {"g4_is_star_union", rep.g4_is_star_union}}}};
    if (!rep.star_sizes.empty()) {
      const auto cert = davis_kahan_star_certificate(g, dec, 1);
      rec["davis_kahan"] = {{"sin_observed", cert.sin_observed},
                            {"bound", nan_safe(cert.bound)},
                            {"gap", cert.gap},
                            {"holds", cert.holds},
                            {"vacuous", cert.vacuous}};
    }
    if (!rep.weyl_holds || !rep.degree_identity_holds || !rep.g4_is_star_union) {
      throw std::runtime_error("decomposition identity violated");
    }
    records[static_cast<std::size_t>(r)] = rec;
  }));
  json j = ctx.header();
  j["replicates"] = records;
  ctx.write("localize.json", j.dump(2) + "\n");
  ctx.result.summary = "localization and star decomposition for i <= " + std::to_string(cfg.K);
}

void run_verify_prob(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  json j = ctx.header();
  json checks = json::array();
  bool ok = true;
  for (Vertex n = 1; n <= std::min<Vertex>(cfg.n, 7); ++n) {
    const auto rep = check_exact_formula(n, 3);
    ok = ok && rep.passed();
    checks.push_back({{"check", "exact_formula"},
                      {"n", n},
                      {"graphs", rep.graphs_checked},
                      {"mismatches", rep.mismatches},
                      {"band_misses", rep.band_misses},
                      {"passed", rep.passed()}});
  }
  for (Vertex n = 2; n <= std::min<Vertex>(cfg.n, 6); ++n) {
    const auto rep = check_negative_correlation(n);
    ok = ok && rep.passed();
    checks.push_back({{"check", "negative_correlation"},
                      {"n", n},
                      {"pairs", rep.pairs_checked},
                      {"violations", rep.violations},
                      {"passed", rep.passed()}});
  }
  const auto atlas = enumerate_process(cfg.n);
  std::int64_t total = 0;
  for (auto x : atlas.numerators) total += x;
  const bool sums_to_one = total == atlas.denominator;
  ok = ok && sums_to_one;
  checks.push_back({{"check", "atlas_total"}, {"n", cfg.n}, {"outcomes", atlas.size()}, {"passed", sums_to_one}});
  j["checks"] = checks;
  j["passed"] = ok;
  ctx.write("verify_prob.json", j.dump(2) + "\n");
  if (!ok) ctx.result.failures.push_back("exact-probability checks failed");
  ctx.result.summary = ok ? "all exact-probability checks passed" : "exact-probability checks FAILED";
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  validate_config(cfg);
  RunContext ctx{cfg, config_hash(cfg), fs::path(cfg.output_dir), {}, {}};
  fs::create_directories(ctx.dir);
  const std::string& e = cfg.experiment;
  try {
    if (e == "generate") run_generate(ctx);
    else if (e == "spectrum") run_spectrum(ctx);
    else if (e == "moments") run_moments(ctx);
    else if (e == "truncate-compare") run_truncate_compare(ctx);
    else if (e == "census") run_census(ctx);
    else if (e == "reconstruct") run_reconstruct(ctx);
    else if (e == "edge") run_edge(ctx);
    else if (e == "localize") run_localize(ctx);
    else if (e == "verify-prob") run_verify_prob(ctx);
    else throw ConfigError("unknown experiment '" + e + "'", 0);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    ctx.result.failures.push_back(ex.what());
  }
  std::sort(ctx.result.artifacts.begin(), ctx.result.artifacts.end());
  json manifest = ctx.header();
  manifest["artifacts"] = ctx.result.artifacts;
  manifest["failures"] = ctx.result.failures;
  json seeds = json::array();
  for (int r = 0; r < cfg.replicates; ++r) seeds.push_back(ctx.seed(r));
  manifest["seeds"] = seeds;
  {
    std::ofstream out(ctx.dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  ctx.result.exit_code = ctx.result.failures.empty() ? 0 : 1;
  return std::move(ctx.result);
}

}  // namespace paspec
