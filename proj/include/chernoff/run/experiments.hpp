#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/circle/asymptotics.hpp"
#include "chernoff/circle/generator.hpp"
#include "chernoff/circle/kernel.hpp"
#include "chernoff/circle/spectral_reference.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/evolution.hpp"
#include "chernoff/matrix/oracle.hpp"
#include "chernoff/matrix/propagator.hpp"
#include "chernoff/mc/feynman_kac.hpp"
#include "chernoff/run/config.hpp"
#include "chernoff/run/emit.hpp"
#include "chernoff/version.hpp"

namespace chernoff::run {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string kind;
  std::vector<RatePoint> table;
  std::optional<RateFit> fit;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> metrics;
  std::vector<std::filesystem::path> files;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline CheckResult check_le(const std::string& name, double value, double bound) {
  return {name, value <= bound, format_short(value) + " <= " + format_short(bound)};
}

inline CheckResult check_ge(const std::string& name, double value, double bound) {
  return {name, value >= bound, format_short(value) + " >= " + format_short(bound)};
}

inline CheckResult check_in(const std::string& name, double value, double lo,
                            double hi) {
  return {name, value >= lo && value <= hi,
          format_short(value) + " in [" + format_short(lo) + ", " +
              format_short(hi) + "]"};
}

inline CheckResult check_decreasing(const std::string& name,
                                    const std::vector<RatePoint>& records,
                                    bool strict) {
  bool pass = true;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double prev = records[i - 1].error;
    const double cur = records[i].error;
    if (strict ? !(cur < prev) : !(cur <= prev * (1.0 + 1e-9) + 1e-15))
      pass = false;
  }
  std::string detail = "errors:";
  for (const auto& r : records) detail += " " + format_short(r.error);
  return {name, pass, detail};
}

inline std::vector<Eigen::VectorXd> matrix_probe_basket(int dim,
                                                        std::uint64_t seed) {
  std::vector<Eigen::VectorXd> probes;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(dim);
  e1[0] = 1.0;
  probes.push_back(e1);
  probes.push_back(Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim))));
  const GaussianUnitProbe gen{dim};
  const std::uint64_t key = derive_seed(seed, 0xBA5E);
  probes.push_back(gen(key, 0));
  probes.push_back(gen(key, 1));
  return probes;
}

inline std::vector<circle::FunctionSamples> circle_probe_basket(
    const circle::CircleGrid& grid) {
  std::vector<circle::FunctionSamples> probes;
  probes.push_back(circle::constant_samples(grid, 1.0));
  probes.push_back(circle::sample(grid, [](double th) { return std::cos(th); }));
  probes.push_back(circle::sample(grid, [](double th) { return std::sin(th); }));
  probes.push_back(
      circle::sample(grid, [](double th) { return std::cos(2.0 * th); }));
  return probes;
}

inline void require_schedule(const ExperimentConfig& cfg) {
  if (cfg.schedule.empty())
    throw ConfigError("partition schedule must not be empty");
  for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
    if (cfg.schedule[i] < 1)
      throw ConfigError("partition schedule entries must be >= 1");
    if (i > 0 && cfg.schedule[i] <= cfg.schedule[i - 1])
      throw ConfigError("partition schedule must be strictly increasing");
  }
}

inline std::vector<double> default_dtaus(double coarsest, int count) {
  std::vector<double> out;
  double dt = coarsest;
  for (int i = 0; i < count; ++i) {
    out.push_back(dt);
    dt *= 0.5;
  }
  return out;
}

}  // namespace detail

// Theorem-level study: Chernoff products of a matrix propagator family vs
// the RK4 evolution oracle over a schedule of partitions.
inline ExperimentReport run_matrix_convergence(const ExperimentConfig& cfg) {
  detail::require_schedule(cfg);
  const auto family = parse_family(cfg.family, cfg.family_table);
  const auto q = matrix::build_propagator(family, parse_variant(cfg.variant));
  const Eigen::MatrixXd uref =
      matrix::ode_evolution_oracle(family, cfg.s, cfg.t, cfg.reference_steps);
  const auto probes = detail::matrix_probe_basket(family.dim, cfg.seed);

  ExperimentReport rep;
  rep.kind = cfg.kind;
  rep.table.resize(cfg.schedule.size());
  parallel_for(cfg.schedule.size(), [&](std::size_t i) {
    const Partition p = make_partition(cfg.s, cfg.t, std::size_t(cfg.schedule[i]),
                                       cfg.partition_scheme(), cfg.seed);
    double err = 0.0;
    for (const auto& x : probes)
      err = std::max(err, (chernoff_apply(q, p, x) - uref * x).norm());
    rep.table[i] = {p.mesh(), err};
  });

  rep.checks.push_back(
      detail::check_decreasing("errors-strictly-decreasing", rep.table, true));
  const RateFit fit = fit_rate(rep.table);
  rep.fit = fit;
  rep.checks.push_back(detail::check_in("fit-slope-first-order", fit.slope, 0.9, 1.1));
  rep.metrics.emplace_back("fitted_slope", format_short(fit.slope));
  rep.metrics.emplace_back("variant", cfg.variant);
  return rep;
}

// Commuting case: frozen-exponential products vs exp(int a(r) dr * A0).
inline ExperimentReport run_matrix_commuting(const ExperimentConfig& cfg) {
  detail::require_schedule(cfg);
  Eigen::MatrixXd base = matrix::presets::dissipative_base3();
  if (cfg.family == "constant")
    base = parse_family(cfg.family, cfg.family_table).at(0.0);
  else if (cfg.family != "dissipative3")
    throw ConfigError("matrix-commuting supports family dissipative3 or constant");
  const matrix::CommutingFamilySpec spec{base, parse_profile(cfg.profile)};
  const auto q =
      matrix::build_propagator(spec.family(), parse_variant(cfg.variant));
  const Eigen::MatrixXd uref =
      matrix::commuting_evolution_oracle(spec, cfg.s, cfg.t);
  const auto probes = detail::matrix_probe_basket(3, cfg.seed);

  ExperimentReport rep;
  rep.kind = cfg.kind;
  rep.table.resize(cfg.schedule.size());
  parallel_for(cfg.schedule.size(), [&](std::size_t i) {
    const Partition p = make_partition(cfg.s, cfg.t, std::size_t(cfg.schedule[i]),
                                       cfg.partition_scheme(), cfg.seed);
    double err = 0.0;
    for (const auto& x : probes)
      err = std::max(err, (chernoff_apply(q, p, x) - uref * x).norm());
    rep.table[i] = {p.mesh(), err};
  });

  const bool constant_profile =
      detail::parse_call(cfg.profile).first == "constant";
  if (constant_profile) {
    double worst = 0.0;
    for (const auto& r : rep.table) worst = std::max(worst, r.error);
    rep.checks.push_back(detail::check_le("constant-profile-exact", worst, 1e-12));
    rep.metrics.emplace_back("max_error", format_full(worst));
  } else {
    const RateFit fit = fit_rate(rep.table);
    rep.fit = fit;
    rep.checks.push_back(
        detail::check_ge("fit-slope-riemann-sum", fit.slope, 0.9));
    rep.metrics.emplace_back("fitted_slope", format_short(fit.slope));
  }
  rep.metrics.emplace_back("profile", cfg.profile);
  return rep;
}

// Circle transport vs the spectral reference over a partition schedule.
inline ExperimentReport run_circle_convergence(const ExperimentConfig& cfg) {
  detail::require_schedule(cfg);
  const circle::CircleGrid grid(cfg.grid_n);
  const Observable obs = parse_observable(cfg.observable);
  const circle::FunctionSamples g = obs.on(grid);
  const circle::DriftPath path = parse_drift(cfg.drift, cfg.s, cfg.t);
  const circle::FunctionSamples ref =
      circle::spectral_reference(cfg.s, cfg.t, path, g, cfg.reference_steps);

  ExperimentReport rep;
  rep.kind = cfg.kind;
  for (int n : cfg.schedule) {
    const Partition p = make_partition(cfg.s, cfg.t, std::size_t(n),
                                       cfg.partition_scheme(), cfg.seed);
    const circle::FunctionSamples transported =
        circle::chernoff_transport(p, path, g);
    rep.table.push_back({p.mesh(), circle::state_norm(transported - ref)});
  }

  rep.checks.push_back(
      detail::check_decreasing("errors-nonincreasing", rep.table, false));
  const RateFit fit = fit_rate(rep.table);
  rep.fit = fit;
  rep.checks.push_back(detail::check_ge("fit-slope", fit.slope, 0.4));
  rep.metrics.emplace_back("fitted_slope", format_short(fit.slope));
  rep.metrics.emplace_back("drift", path.name);
  rep.metrics.emplace_back("observable", obs.name);
  return rep;
}

// Short-time expansion probe of the kernel average, with a constant-g
// control run whose remainder must sit at the round-off floor.
inline ExperimentReport run_asymptotics(const ExperimentConfig& cfg) {
  const circle::CircleGrid grid(cfg.grid_n);
  const Observable obs = parse_observable(cfg.observable);
  const circle::FunctionSamples g = obs.on(grid);
  const circle::DriftPath path = parse_drift(cfg.drift, cfg.s, cfg.t);
  const int y_idx = cfg.probe_y_index >= 0 ? cfg.probe_y_index : grid.n / 8;
  const std::vector<double> dtaus =
      cfg.probe_dtaus.empty() ? detail::default_dtaus(1.0 / 16.0, 6)
                              : cfg.probe_dtaus;

  const auto res = circle::asymptotics_probe(g, y_idx, cfg.probe_tau, path, dtaus);
  const auto control = circle::asymptotics_probe(
      circle::constant_samples(grid, 1.0), y_idx, cfg.probe_tau, path, dtaus);

  ExperimentReport rep;
  rep.kind = cfg.kind;
  bool finite = true;
  for (std::size_t i = 0; i < dtaus.size(); ++i) {
    if (!std::isfinite(res.remainders[i])) finite = false;
    rep.table.push_back({dtaus[i], std::abs(res.remainders[i])});
  }
  rep.checks.push_back({"remainders-finite", finite, ""});
  if (res.fit) {
    rep.fit = res.fit;
    rep.checks.push_back(
        detail::check_ge("remainder-slope", res.fit->slope, 0.45));
    rep.metrics.emplace_back("fitted_slope", format_short(res.fit->slope));
  } else {
    rep.checks.push_back({"remainder-slope", false, "no usable fit"});
  }
  double worst_control = 0.0;
  for (double r : control.remainders)
    worst_control = std::max(worst_control, std::abs(r));
  rep.checks.push_back(
      detail::check_le("constant-g-remainder", worst_control, 1e-10));
  rep.metrics.emplace_back("constant_g_max_remainder", format_full(worst_control));
  rep.metrics.emplace_back("probe_tau", format_short(cfg.probe_tau));
  rep.metrics.emplace_back("probe_node", format_short(grid.node(y_idx)));
  return rep;
}

// Feynman-Kac cross-validation: Chernoff transport vs Monte Carlo, plus the
// driftless closed-form control E[cos theta_t] = exp(-(t-s)/2) cos theta0.
inline ExperimentReport run_mc_crossval(const ExperimentConfig& cfg) {
  detail::require_schedule(cfg);
  const circle::CircleGrid grid(cfg.grid_n);
  const Observable obs = parse_observable(cfg.observable);
  const circle::FunctionSamples g = obs.on(grid);
  const circle::DriftPath path = parse_drift(cfg.drift, cfg.s, cfg.t);
  const int n = cfg.schedule.back();
  const Partition p = make_partition(cfg.s, cfg.t, std::size_t(n),
                                     cfg.partition_scheme(), cfg.seed);
  const circle::FunctionSamples transported = circle::chernoff_transport(p, path, g);

  const double h = (cfg.t - cfg.s) / double(cfg.mc_substeps);
  const double bias = mc::default_bias_allowance(cfg.s, cfg.t, cfg.mc_substeps);
  const circle::DriftPath still = parse_drift("constant(0)", cfg.s, cfg.t);

  ExperimentReport rep;
  rep.kind = cfg.kind;
  for (std::size_t i = 0; i < cfg.mc_theta0.size(); ++i) {
    const double theta0 = cfg.mc_theta0[i];
    mc::McConfig mcc;
    mcc.paths = cfg.mc_paths;
    mcc.substeps = cfg.mc_substeps;
    mcc.antithetic = cfg.mc_antithetic;
    mcc.seed = derive_seed(cfg.seed, 0x3C00 + i);

    const auto terminals = mc::simulate_paths(cfg.s, cfg.t, theta0, path, mcc);
    const auto est = mc::mc_expectation(terminals, obs.fn, mcc.antithetic);
    const auto cv = mc::cross_validate(transported, theta0, est, bias);
    const std::string tag = "theta0=" + format_short(theta0);
    rep.checks.push_back({"crossval(" + tag + ")", cv.agree,
                          "gap " + format_short(cv.gap) + " vs band " +
                              format_short(cv.band)});
    rep.table.push_back({h, cv.gap});
    rep.metrics.emplace_back("mc_mean(" + tag + ")", format_full(est.mean));
    rep.metrics.emplace_back("mc_stderr(" + tag + ")", format_full(est.stderr_));
    rep.metrics.emplace_back("mc_seed(" + tag + ")",
                             std::to_string(mcc.seed));

    // Driftless control with an exact first-mode decay.
    mc::McConfig ctrl = mcc;
    ctrl.seed = derive_seed(cfg.seed, 0x3C80 + i);
    const auto ctrl_terminals =
        mc::simulate_paths(cfg.s, cfg.t, theta0, still, ctrl);
    const auto ctrl_est = mc::mc_expectation(
        ctrl_terminals, [](double th) { return std::cos(th); }, ctrl.antithetic);
    const double expected = std::exp(-(cfg.t - cfg.s) / 2.0) * std::cos(theta0);
    const double gap = std::abs(ctrl_est.mean - expected);
    const double band = 3.0 * ctrl_est.stderr_ + bias;
    rep.checks.push_back({"closed-form(" + tag + ")", gap <= band,
                          "gap " + format_short(gap) + " vs band " +
                              format_short(band)});
  }
  rep.metrics.emplace_back("bias_allowance", format_short(bias));
  rep.metrics.emplace_back("partition_n", std::to_string(n));
  return rep;
}

// Assumption diagnostics: the uniform product bound (Assumption 3) and the
// derivative consistency (Assumption 4) for one propagator family.
inline ExperimentReport run_assumption_probe(const ExperimentConfig& cfg) {
  const std::vector<double> dtaus =
      cfg.probe_dtaus.empty() ? detail::default_dtaus(1.0 / 8.0, 6)
                              : cfg.probe_dtaus;
  std::vector<double> taus = cfg.probe_taus;
  if (taus.empty())
    taus = {cfg.s + 0.5 * (cfg.t - cfg.s), cfg.s + 0.75 * (cfg.t - cfg.s), cfg.t};

  ExperimentReport rep;
  rep.kind = cfg.kind;

  ConsistencyDefects defects;
  double bound = 0.0;
  bool explicit_variant = false;
  if (cfg.probe_target == "circle-kernel") {
    const circle::CircleGrid grid(cfg.grid_n);
    const circle::DriftPath path = parse_drift(cfg.drift, cfg.s, cfg.t);
    const circle::CircleKernelPropagator q{grid, path};
    const circle::CircleGeneratorFamily gen{path};
    defects = generator_consistency_probe(q, gen, detail::circle_probe_basket(grid),
                                          taus, dtaus);
    const double min_gap =
        1.0001 * std::pow(circle::kMinNodesPerSigma * circle::kTwoPi /
                              double(grid.n),
                          2.0);
    bound = product_bound_probe<circle::FunctionSamples>(
        q, TimeInterval{cfg.s, cfg.t}, cfg.probe_trials, cfg.probe_max_factors,
        cfg.seed, circle::FourierUnitProbe{grid}, min_gap);
  } else if (cfg.probe_target == "matrix-frozen" ||
             cfg.probe_target == "matrix-implicit" ||
             cfg.probe_target == "matrix-explicit") {
    const auto family = parse_family(cfg.family, cfg.family_table);
    matrix::PropagatorVariant variant = matrix::PropagatorVariant::kFrozenExponential;
    if (cfg.probe_target == "matrix-implicit")
      variant = matrix::PropagatorVariant::kImplicitEuler;
    if (cfg.probe_target == "matrix-explicit") {
      variant = matrix::PropagatorVariant::kExplicitEuler;
      explicit_variant = true;
    }
    const auto q = matrix::build_propagator(family, variant);
    defects = generator_consistency_probe(q, family,
                                          detail::matrix_probe_basket(family.dim, cfg.seed),
                                          taus, dtaus);
    // Explicit Euler products stay bounded only under the mesh cap; probe a
    // subinterval short enough that every sampled gap respects it.
    const double probe_t =
        explicit_variant ? std::min(cfg.t, cfg.s + 0.25) : cfg.t;
    bound = product_bound_probe<Eigen::VectorXd>(
        q, TimeInterval{cfg.s, probe_t}, cfg.probe_trials, cfg.probe_max_factors,
        cfg.seed, GaussianUnitProbe{family.dim});
  } else {
    throw ConfigError("unknown probe target '" + cfg.probe_target + "'");
  }

  rep.table = defects.max_defect_records();
  const double floor = 1e-12;
  if (explicit_variant) {
    double worst = 0.0;
    for (const auto& r : rep.table) worst = std::max(worst, r.error);
    rep.checks.push_back(
        detail::check_le("defect-exact-consistency", worst, floor));
  } else {
    rep.checks.push_back(
        detail::check_decreasing("defect-nonincreasing", rep.table, false));
    const RateFit fit = fit_rate(rep.table);
    rep.fit = fit;
    if (cfg.probe_target == "circle-kernel")
      rep.checks.push_back(detail::check_ge("defect-slope", fit.slope, 0.4));
    else
      rep.checks.push_back(
          detail::check_in("defect-slope", fit.slope, 0.8, 1.2));
    rep.metrics.emplace_back("fitted_slope", format_short(fit.slope));
  }
  rep.checks.push_back(
      detail::check_le("product-bound", bound, 1.0 + 1e-10));
  rep.metrics.emplace_back("product_bound", format_full(bound));
  rep.metrics.emplace_back("probe_target", cfg.probe_target);
  rep.metrics.emplace_back("probe_seed", std::to_string(cfg.seed));
  return rep;
}

namespace detail {

inline ExperimentReport dispatch(const ExperimentConfig& cfg) {
  if (cfg.kind == "matrix-convergence") return run_matrix_convergence(cfg);
  if (cfg.kind == "matrix-commuting") return run_matrix_commuting(cfg);
  if (cfg.kind == "circle-convergence") return run_circle_convergence(cfg);
  if (cfg.kind == "asymptotics") return run_asymptotics(cfg);
  if (cfg.kind == "mc-crossval") return run_mc_crossval(cfg);
  if (cfg.kind == "assumption-probe") return run_assumption_probe(cfg);
  throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
}

}  // namespace detail

// Runs one experiment and emits <outdir>/<kind>.csv, an SVG log-log plot
// when the table supports one, and <outdir>/manifest.txt. The report's
// checks decide the process exit status in the CLI.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  ExperimentReport rep = detail::dispatch(cfg);
  const auto t1 = clock::now();

  std::error_code ec;
  std::filesystem::create_directories(cfg.outdir, ec);
  if (ec)
    throw IoError("cannot create output directory " + cfg.outdir.string() +
                  ": " + ec.message());

  const std::filesystem::path csv = cfg.outdir / (cfg.kind + ".csv");
  emit_table(rep.table, csv);
  rep.files.push_back(csv);

  std::size_t positive = 0, distinct = 0;
  for (std::size_t i = 0; i < rep.table.size(); ++i) {
    if (rep.table[i].error > 0.0) ++positive;
    if (i == 0 || rep.table[i].mesh != rep.table[i - 1].mesh) ++distinct;
  }
  if (positive >= 2 && distinct >= 2) {
    const std::filesystem::path svg = cfg.outdir / (cfg.kind + ".svg");
    emit_plot(rep.table, svg, rep.fit ? &*rep.fit : nullptr);
    rep.files.push_back(svg);
  }
  const auto t2 = clock::now();

  const std::filesystem::path manifest = cfg.outdir / "manifest.txt";
  {
    std::ofstream out(manifest, std::ios::binary);
    if (!out) throw IoError("cannot write " + manifest.string());
    out << "chernoff-evolve " << kVersion << "\n";
    out << "kind = " << cfg.kind << "\n";
    out << "[config]\n";
    for (const auto& kv : cfg.echo)
      out << kv.first << " = " << kv.second << "\n";
    out << "[seeds]\n";
    out << "master = " << cfg.seed << "\n";
    out << "[checks]\n";
    for (const auto& c : rep.checks)
      out << c.name << " = " << (c.pass ? "pass" : "FAIL")
          << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    out << "[metrics]\n";
    for (const auto& kv : rep.metrics)
      out << kv.first << " = " << kv.second << "\n";
    out << "[timing]\n";
    out << "compute_ms = "
        << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
        << "\n";
    out << "emit_ms = "
        << std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count()
        << "\n";
    out << "[files]\n";
    for (const auto& f : rep.files)
      out << f.filename().string() << " fnv1a64=" << checksum_file(f) << "\n";
    if (!out) throw IoError("write failed for " + manifest.string());
  }
  rep.files.push_back(manifest);
  return rep;
}

}  // namespace chernoff::run
