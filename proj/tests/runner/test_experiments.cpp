#include <catch2/catch_amalgamated.hpp>

#include <chernoff/run/experiments.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chernoff;
using namespace chernoff::run;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "chernoff_exp" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig base_config(const std::string& kind, const std::string& name) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.outdir = fresh_dir(name);
  cfg.seed = 7;
  cfg.echo = {{"experiment.kind", kind}};
  return cfg;
}

}  // namespace

TEST_CASE("matrix-commuting with a constant profile is exact") {
  ExperimentConfig cfg = base_config("matrix-commuting", "commuting_exact");
  cfg.s = 0.0;
  cfg.t = 1.0;
  cfg.schedule = {2, 4, 8};
  cfg.profile = "constant(1)";
  const auto report = run_experiment(cfg);
  CHECK(report.all_passed());

  const std::string csv = slurp(cfg.outdir / "matrix-commuting.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line))
    CHECK(line.substr(line.rfind(',') + 1) == "exact");
}

TEST_CASE("unknown kinds are rejected before any output") {
  ExperimentConfig cfg = base_config("nonsense", "unknown_kind");
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  CHECK(!std::filesystem::exists(cfg.outdir));
}

TEST_CASE("an empty schedule is a config error and emits nothing") {
  ExperimentConfig cfg = base_config("matrix-convergence", "empty_schedule");
  cfg.schedule.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  CHECK(!std::filesystem::exists(cfg.outdir));
}

TEST_CASE("unwritable output paths are io errors") {
  ExperimentConfig cfg = base_config("matrix-commuting", "blocked");
  cfg.schedule = {2, 4, 8};
  cfg.profile = "constant(1)";
  const auto blocker = fresh_dir("blocked_parent");
  std::filesystem::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file in the way";
  cfg.outdir = blocker / "sub";
  CHECK_THROWS_AS(run_experiment(cfg), IoError);
}

TEST_CASE("runs are byte-reproducible and emit a checksummed manifest") {
  ExperimentConfig cfg = base_config("circle-convergence", "repro1");
  cfg.s = 0.2;
  cfg.t = 1.0;
  cfg.grid_n = 128;
  cfg.schedule = {2, 4, 8};
  cfg.drift = "linear(0.7)";
  cfg.reference_steps = 512;
  const auto first = run_experiment(cfg);

  ExperimentConfig cfg2 = cfg;
  cfg2.outdir = fresh_dir("repro2");
  run_experiment(cfg2);

  const std::string csv1 = slurp(cfg.outdir / "circle-convergence.csv");
  const std::string csv2 = slurp(cfg2.outdir / "circle-convergence.csv");
  CHECK(!csv1.empty());
  CHECK(csv1 == csv2);

  const std::string manifest = slurp(cfg.outdir / "manifest.txt");
  CHECK(manifest.find("chernoff-evolve") != std::string::npos);
  CHECK(manifest.find("fnv1a64=" + fnv1a64_hex(csv1)) != std::string::npos);
  CHECK(manifest.find("[checks]") != std::string::npos);

  bool saw_csv = false, saw_svg = false, saw_manifest = false;
  for (const auto& f : first.files) {
    if (f.extension() == ".csv") saw_csv = true;
    if (f.extension() == ".svg") saw_svg = true;
    if (f.filename() == "manifest.txt") saw_manifest = true;
  }
  CHECK(saw_csv);
  CHECK(saw_svg);
  CHECK(saw_manifest);
}

TEST_CASE("assumption probe for the explicit variant sees exact consistency") {
  ExperimentConfig cfg = base_config("assumption-probe", "probe_explicit");
  cfg.s = 0.2;
  cfg.t = 1.0;
  cfg.probe_target = "matrix-explicit";
  cfg.probe_trials = 40;
  const auto report = run_experiment(cfg);
  CHECK(report.all_passed());
}
