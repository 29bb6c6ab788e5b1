#include <catch2/catch_amalgamated.hpp>

#include <chernoff/rate.hpp>

#include <cmath>

using namespace chernoff;

namespace {

std::vector<RatePoint> planted(double slope, double scale) {
  std::vector<RatePoint> records;
  for (double mesh : {0.5, 0.25, 0.125, 0.0625, 0.03125})
    records.push_back({mesh, scale * std::pow(mesh, slope)});
  return records;
}

}  // namespace

TEST_CASE("fit_rate recovers planted slopes") {
  CHECK(std::abs(fit_rate(planted(1.0, 1.0)).slope - 1.0) < 1e-12);
  CHECK(std::abs(fit_rate(planted(2.0, 1.0)).slope - 2.0) < 1e-12);
  const RateFit half = fit_rate(planted(0.5, 0.3));
  CHECK(std::abs(half.slope - 0.5) < 1e-12);
  CHECK(std::abs(std::exp(half.intercept) - 0.3) < 1e-10);
}

TEST_CASE("fit_rate drops zero-error records") {
  auto records = planted(1.0, 1.0);
  records.push_back({0.01, 0.0});
  CHECK(std::abs(fit_rate(records).slope - 1.0) < 1e-12);
}

TEST_CASE("fit_rate demands enough usable data") {
  CHECK_THROWS_AS(fit_rate({{0.5, 1.0}, {0.25, 0.5}}), InsufficientDataError);
  CHECK_THROWS_AS(fit_rate({{0.5, 1.0}, {0.25, 0.0}, {0.125, 0.0}}),
                  InsufficientDataError);
  CHECK_THROWS_AS(fit_rate({{0.5, 1.0}, {0.5, 0.9}, {0.5, 0.8}}),
                  InsufficientDataError);
  CHECK_THROWS_AS(fit_rate({{-0.5, 1.0}, {0.25, 0.5}, {0.125, 0.25}}),
                  InvalidIntervalError);
}

TEST_CASE("ConvergenceReport sorts by decreasing mesh and refits") {
  std::vector<RatePoint> shuffled = {{0.125, 0.125}, {0.5, 0.5}, {0.25, 0.25}};
  const ConvergenceReport report = ConvergenceReport::build(shuffled);
  REQUIRE(report.records.size() == 3);
  CHECK(report.records[0].mesh == 0.5);
  CHECK(report.records[2].mesh == 0.125);
  CHECK(std::abs(report.fitted_slope - 1.0) < 1e-12);

  const RateFit refit = fit_rate(report.records);
  CHECK(refit.slope == report.fitted_slope);
  CHECK(refit.intercept == report.fitted_intercept);
}
