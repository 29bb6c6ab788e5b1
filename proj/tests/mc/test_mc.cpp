#include <catch2/catch_amalgamated.hpp>

#include <chernoff/circle/kernel.hpp>
#include <chernoff/circle/spectral_reference.hpp>
#include <chernoff/mc/feynman_kac.hpp>
#include <chernoff/parallel.hpp>

#include <cmath>
#include <optional>

using namespace chernoff;
using namespace chernoff::circle;
using namespace chernoff::mc;

namespace {

struct ThreadOverrideGuard {
  ~ThreadOverrideGuard() { set_thread_override(std::nullopt); }
};

McConfig small_config(std::uint64_t seed) {
  McConfig cfg;
  cfg.paths = 20000;
  cfg.substeps = 50;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("terminal sets are bitwise reproducible across thread counts") {
  ThreadOverrideGuard guard;
  const auto path = linear_path(0.7);
  set_thread_override(1);
  const auto a = simulate_paths(0.2, 1.0, 0.3, path, small_config(11));
  set_thread_override(8);
  const auto b = simulate_paths(0.2, 1.0, 0.3, path, small_config(11));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("each path depends only on its own counter") {
  auto cfg_small = small_config(5);
  cfg_small.paths = 100;
  auto cfg_large = small_config(5);
  cfg_large.paths = 200;
  const auto path = constant_path(0.0);
  const auto small = simulate_paths(0.0, 0.5, 0.0, path, cfg_small);
  const auto large = simulate_paths(0.0, 0.5, 0.0, path, cfg_large);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
}

TEST_CASE("driftless first-mode decay matches the wrapped heat kernel") {
  // E[cos(theta_t - theta_0)] = exp(-(t-s)/2), exact for pure Brownian
  // motion, which Euler-Maruyama samples without discretization bias.
  const auto path = constant_path(0.0);
  const double theta0 = 1.2;
  const auto terminals = simulate_paths(0.0, 0.5, theta0, path, small_config(42));
  const auto est = mc_expectation(
      terminals, [theta0](double th) { return std::cos(th - theta0); });
  CHECK(std::abs(est.mean - std::exp(-0.25)) <= 3.0 * est.stderr_);
}

TEST_CASE("driftless decay at full budget: 2e5 paths, 200 substeps") {
  McConfig cfg;
  cfg.paths = 200000;
  cfg.substeps = 200;
  cfg.seed = 8080;
  const auto terminals = simulate_paths(0.0, 0.5, 0.0, constant_path(0.0), cfg);
  const auto est =
      mc_expectation(terminals, [](double th) { return std::cos(th); });
  CHECK(std::abs(est.mean - std::exp(-0.25)) <= 3.0 * est.stderr_ + 2e-3);
  CHECK(est.stderr_ < 2e-3);
}

TEST_CASE("near-zero time budget keeps paths at the start point") {
  auto cfg = small_config(3);
  cfg.paths = 1000;
  const double dt = 1e-4;
  const auto terminals = simulate_paths(0.0, dt, 3.0, constant_path(0.0), cfg);
  for (double th : terminals) CHECK(std::abs(th - 3.0) <= 8.0 * std::sqrt(dt));
}

TEST_CASE("terminal angles are wrapped into [0, 2*pi)") {
  const auto terminals =
      simulate_paths(0.0, 1.0, 6.2, linear_path(2.0), small_config(9));
  for (double th : terminals) {
    CHECK(th >= 0.0);
    CHECK(th < kTwoPi);
  }
}

TEST_CASE("mc_expectation handles constants and rejects empty input") {
  const std::vector<double> terminals = {0.1, 0.2, 0.3};
  const auto est = mc_expectation(terminals, [](double) { return 1.0; });
  CHECK(est.mean == 1.0);
  CHECK(est.stderr_ == 0.0);
  CHECK_THROWS_AS(mc_expectation({}, [](double) { return 1.0; }),
                  InsufficientDataError);
}

TEST_CASE("grid observables interpolate like their closed forms") {
  const CircleGrid grid(128);
  const auto g = sample(grid, [](double th) { return std::cos(th); });
  const auto terminals =
      simulate_paths(0.0, 0.5, 0.7, constant_path(0.0), small_config(77));
  const auto via_grid = mc_expectation(terminals, g);
  const auto via_fn =
      mc_expectation(terminals, [](double th) { return std::cos(th); });
  CHECK(via_grid.mean == Catch::Approx(via_fn.mean).margin(1e-12));
  CHECK(via_grid.stderr_ == Catch::Approx(via_fn.stderr_).margin(1e-12));
}

TEST_CASE("stderr shrinks like one over sqrt(paths)") {
  const auto path = constant_path(0.0);
  auto cfg1 = small_config(123);
  auto cfg2 = small_config(123);
  cfg2.paths = 4 * cfg1.paths;
  const auto est1 = mc_expectation(
      simulate_paths(0.0, 0.5, 0.0, path, cfg1), [](double th) { return std::cos(th); });
  const auto est2 = mc_expectation(
      simulate_paths(0.0, 0.5, 0.0, path, cfg2), [](double th) { return std::cos(th); });
  const double ratio = est1.stderr_ / est2.stderr_;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("antithetic pairing cuts the variance on odd observables") {
  const auto path = constant_path(0.0);
  auto plain = small_config(55);
  auto anti = small_config(55);
  anti.antithetic = true;
  const auto g = [](double th) { return std::sin(th); };
  const auto est_plain =
      mc_expectation(simulate_paths(0.0, 0.5, 0.0, path, plain), g, false);
  const auto est_anti =
      mc_expectation(simulate_paths(0.0, 0.5, 0.0, path, anti), g, true);
  const double var_ratio = (est_anti.stderr_ * est_anti.stderr_) /
                           (est_plain.stderr_ * est_plain.stderr_);
  CHECK(var_ratio <= 0.75);
}

TEST_CASE("weak error stays first order in the substep") {
  // Halving the step changes the estimate by O(h); with the same noise per
  // path this is a deterministic comparison.
  const auto path = linear_path(0.7);
  auto coarse = small_config(31);
  coarse.substeps = 25;
  auto fine = small_config(31);
  fine.substeps = 50;
  const auto g = [](double th) { return std::cos(th); };
  const auto est_coarse =
      mc_expectation(simulate_paths(0.2, 1.0, 0.0, path, coarse), g);
  const auto est_fine = mc_expectation(simulate_paths(0.2, 1.0, 0.0, path, fine), g);
  const double h = (1.0 - 0.2) / 25.0;
  CHECK(std::abs(est_coarse.mean - est_fine.mean) <=
        5.0 * h + 3.0 * (est_coarse.stderr_ + est_fine.stderr_));
}

TEST_CASE("config invariants are enforced") {
  const auto path = constant_path(0.0);
  McConfig cfg;
  cfg.paths = 50;
  CHECK_THROWS_AS(simulate_paths(0.0, 0.5, 0.0, path, cfg), InvalidCountError);
  cfg.paths = 101;
  cfg.antithetic = true;
  CHECK_THROWS_AS(simulate_paths(0.0, 0.5, 0.0, path, cfg), InvalidCountError);
  cfg.paths = 100;
  cfg.substeps = 5;
  CHECK_THROWS_AS(simulate_paths(0.0, 0.5, 0.0, path, cfg), InvalidCountError);
  cfg.substeps = 10;
  CHECK_THROWS_AS(simulate_paths(0.5, 0.5, 0.0, path, cfg), InvalidIntervalError);
}

TEST_CASE("cross_validate compares against the band") {
  const McEstimate exact{1.0, 0.0, 1000};
  const auto agree = cross_validate(1.0, exact, 0.0);
  CHECK(agree.agree);
  CHECK(agree.gap <= 1e-10);

  const McEstimate est{0.5, 0.01, 1000};
  const auto verdict = cross_validate(0.9, est, 0.05);
  CHECK(!verdict.agree);
  CHECK(verdict.gap == Catch::Approx(0.4));
  CHECK(verdict.band == Catch::Approx(0.08));
}

TEST_CASE("spectral, transport, and Monte Carlo estimates pairwise agree") {
  const CircleGrid grid(256);
  const auto path = linear_path(0.7);
  const auto g = sample(grid, [](double th) { return std::cos(th); });

  const auto ref = spectral_reference(0.2, 1.0, path, g, 1000);
  const Partition p = make_partition(0.2, 1.0, 64);
  const auto transported = chernoff_transport(p, path, g);
  CHECK(state_norm(transported - ref) <= 5e-3);

  auto cfg = small_config(99);
  cfg.paths = 40000;
  cfg.substeps = 100;
  const double bias = default_bias_allowance(0.2, 1.0, cfg.substeps);
  for (double theta0 : {0.0, 1.0}) {
    const auto est =
        mc_expectation(simulate_paths(0.2, 1.0, theta0, path, cfg),
                       [](double th) { return std::cos(th); });
    CHECK(cross_validate(transported, theta0, est, bias).agree);
    CHECK(cross_validate(trig_interp(ref, theta0), est, bias).agree);
  }
}

TEST_CASE("a wrong drift sign is flagged as disagreement") {
  const CircleGrid grid(256);
  const auto right = linear_path(0.7);
  const auto wrong = linear_path(-0.7);
  const auto g = sample(grid, [](double th) { return std::cos(th); });

  const Partition p = make_partition(0.2, 1.0, 32);
  const auto transported = chernoff_transport(p, wrong, g);

  auto cfg = small_config(2025);
  cfg.paths = 40000;
  cfg.substeps = 200;  // small bias allowance, so the gap dominates the band
  const double theta0 = 1.0;
  const auto est = mc_expectation(simulate_paths(0.2, 1.0, theta0, right, cfg),
                                  [](double th) { return std::cos(th); });
  const double bias = default_bias_allowance(0.2, 1.0, cfg.substeps);
  const auto verdict = cross_validate(transported, theta0, est, bias);
  CHECK(!verdict.agree);
  CHECK(verdict.gap > 3.0 * verdict.band);
}
