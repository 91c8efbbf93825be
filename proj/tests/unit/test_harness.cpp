#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "paspec/harness.hpp"
#include "paspec/moment_theory.hpp"

using namespace paspec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("paspec_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto cfg = parse_config_text(
      "# comment\n"
      "experiment = truncate-compare\n"
      "m = 3   # trailing comment\n"
      "n=500\n"
      "\n"
      "epsilon = 0.25\n"
      "K = 6\n"
      "replicates = 4\n"
      "base_seed = 17\n"
      "s = 2\n"
      "normalize = sqrt-m\n");
  CHECK(cfg.experiment == "truncate-compare");
  CHECK(cfg.m == 3);
  CHECK(cfg.n == 500);
  CHECK(cfg.epsilon == 0.25);
  CHECK(cfg.K == 6);
  CHECK(cfg.replicates == 4);
  CHECK(cfg.base_seed == 17);
  CHECK(cfg.s == 2);
  CHECK_FALSE(cfg.t_thresh);
  CHECK(cfg.normalize == "sqrt-m");

  CHECK(parse_config_text(config_to_text(cfg)).n == 500);
  CHECK(config_to_text(parse_config_text(config_to_text(cfg))) == config_to_text(cfg));
}

TEST_CASE("config errors carry the line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("m = 2\n\nbogus = 1\n") == 3);
  CHECK(line_of("m = two\n") == 1);
  CHECK(line_of("m = 2\nn 5\n") == 2);
  CHECK(line_of("experiment = nope\n") == 1);
  CHECK(line_of("normalize = log\n") == 1);
  CHECK(line_of("m = 2 3\n") == 1);
  CHECK_THROWS_AS(load_config_file("/nonexistent/paspec.cfg"), ConfigError);

  ExperimentConfig cfg;
  cfg.m = 0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = {};
  cfg.experiment = "moments";
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.epsilon = 0.1;
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(config_keys().size() == 17);
  CHECK(experiment_ids().size() == 9);
}

TEST_CASE("config hash") {
  ExperimentConfig a;
  ExperimentConfig b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.base_seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("worker pool") {
  ::setenv("PA_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  ::setenv("PA_WORKERS", "zero", 1);
  CHECK(worker_count() == 1);
  ::unsetenv("PA_WORKERS");
  CHECK(worker_count() == 1);

  std::vector<int> seen(20, 0);
  const auto outcomes = run_replicates(20, 4, [&](int r) {
    seen[static_cast<std::size_t>(r)] = r + 1;
    if (r == 7) throw std::runtime_error("boom");
  });
  REQUIRE(outcomes.size() == 20);
  for (int r = 0; r < 20; ++r) {
    CHECK(seen[static_cast<std::size_t>(r)] == r + 1);
    CHECK(outcomes[static_cast<std::size_t>(r)].ok == (r != 7));
  }
  CHECK(outcomes[7].error == "boom");
}

TEST_CASE("moment comparison") {
  ExperimentConfig cfg;
  cfg.experiment = "truncate-compare";
  cfg.m = 2;
  cfg.n = 3000;
  cfg.epsilon = 0.1;
  cfg.K = 4;
  cfg.replicates = 3;
  const auto rows = moment_comparison_report(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].theory == doctest::Approx(limit_moment_C(2, 0.1, 2)));
  CHECK(rows[1].ratio == doctest::Approx(rows[1].empirical_mean / rows[1].theory));
  CHECK(rows[1].ratio > 0.8);
  CHECK(rows[1].ratio < 1.2);
  CHECK(std::isnan(rows[0].ratio));
  CHECK(rows[0].per_replicate.size() == 3);

  ExperimentConfig full;
  full.m = 3;
  full.n = 1000;
  CHECK(moment_theory_value(2, full) == 6.0);
  CHECK(moment_theory_value(4, full) == doctest::Approx(24.0 * std::log(1000.0)));
  CHECK(moment_theory_value(3, full) == 0.0);
  CHECK(std::isnan(moment_theory_value(6, full)));
}

TEST_CASE("runs are deterministic and embed the config hash") {
  ExperimentConfig cfg;
  cfg.experiment = "generate";
  cfg.m = 2;
  cfg.n = 50;
  cfg.replicates = 3;
  cfg.base_seed = 9;
  cfg.output_dir = scratch("gen_a").string();
  const auto a = run(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.artifacts.size() == 4);
  const auto first = slurp(fs::path(cfg.output_dir) / "graph_r1.txt");
  CHECK(first.rfind("pa 2 50 10 1\n", 0) == 0);
  CHECK(parse_edge_list(first) == generate({2, 50, 10}));
  const auto manifest = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "manifest.json"));
  CHECK(manifest["config_hash"] == config_hash(cfg));
  CHECK(manifest["seeds"] == nlohmann::json::array({9, 10, 11}));

  const std::string dir_a = cfg.output_dir;
  cfg.output_dir = scratch("gen_b").string();
  ::setenv("PA_WORKERS", "2", 1);
  run(cfg);
  ::unsetenv("PA_WORKERS");
  for (int r = 0; r < 3; ++r) {
    const auto name = "graph_r" + std::to_string(r) + ".txt";
    CHECK(slurp(fs::path(dir_a) / name) == slurp(fs::path(cfg.output_dir) / name));
  }
}

TEST_CASE("every experiment runs on a tiny config") {
  for (const auto& id : experiment_ids()) {
    ExperimentConfig cfg;
    cfg.experiment = id;
    cfg.m = 2;
    cfg.n = 300;
    cfg.K = 4;
    cfg.replicates = 2;
    cfg.output_dir = scratch("exp_" + id).string();
    if (id == "moments" || id == "reconstruct") cfg.epsilon = 0.1;
    if (id == "verify-prob") cfg.n = 5;
    if (id == "spectrum") cfg.normalize = "figure1";
    const auto result = run(cfg);
    CAPTURE(id);
    CHECK(result.exit_code == 0);
    CHECK(result.failures.empty());
    CHECK_FALSE(result.artifacts.empty());
    for (const auto& path : result.artifacts) {
      // edge lists carry m, n and seed in their fixed header instead
      if (fs::path(path).extension() == ".txt") continue;
      const auto text = slurp(path);
      CHECK(text.find(config_hash(cfg)) != std::string::npos);
    }
  }
}

TEST_CASE("replicate failures are recorded and give a nonzero exit") {
  ExperimentConfig cfg;
  cfg.experiment = "localize";
  cfg.m = 1;
  cfg.n = 6;
  cfg.K = 20;
  cfg.replicates = 2;
  cfg.output_dir = scratch("fail").string();
  const auto result = run(cfg);
  CHECK(result.exit_code != 0);
  CHECK(result.failures.size() == 2);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "manifest.json"));
}
