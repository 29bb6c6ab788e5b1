#include <catch2/catch_amalgamated.hpp>

#include <chernoff/circle/fft.hpp>
#include <chernoff/circle/grid.hpp>
#include <chernoff/philox.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace chernoff;
using namespace chernoff::circle;

TEST_CASE("grid weights sum to the circle volume") {
  for (int n : {4, 12, 32, 256, 1024}) {
    const CircleGrid grid(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += grid.weight();
    CHECK(std::abs(total - kTwoPi) < 1e-13);
    for (int j = 1; j < n; ++j) CHECK(grid.node(j - 1) < grid.node(j));
    CHECK(grid.node(0) == 0.0);
    CHECK(grid.node(n - 1) < kTwoPi);
  }
  CHECK_THROWS_AS(CircleGrid(5), InvalidCountError);
  CHECK_THROWS_AS(CircleGrid(2), InvalidCountError);
}

TEST_CASE("embedding and tangent frame") {
  CHECK((embed(0.0) - Eigen::Vector2d(1.0, 0.0)).norm() == 0.0);
  CHECK((tangent(0.0) - Eigen::Vector2d(0.0, 1.0)).norm() == 0.0);
  CHECK((embed(std::numbers::pi / 2) - Eigen::Vector2d(0.0, 1.0)).norm() < 1e-15);
  CHECK((tangent(std::numbers::pi / 2) - Eigen::Vector2d(-1.0, 0.0)).norm() < 1e-15);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double theta = kTwoPi * philox_uniform(5, 0, i);
    CHECK(std::abs(embed(theta).norm() - 1.0) < 1e-15);
    CHECK(std::abs(embed(theta).dot(tangent(theta))) < 1e-15);
  }
}

TEST_CASE("fft round-trips and matches the naive transform") {
  const std::size_t n = 16;
  std::vector<std::complex<double>> a(n);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = {philox_gaussian(31, 0, j), philox_gaussian(31, 1, j)};

  // Naive DFT as the independent oracle.
  std::vector<std::complex<double>> want(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += a[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k) / double(n));
    want[k] = acc;
  }

  auto got = a;
  fft_inplace(got, false);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);

  fft_inplace(got, true);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(got[j] - a[j]) < 1e-13);
}

TEST_CASE("non power-of-two even sizes use the generic transform") {
  const CircleGrid grid(12);
  const auto f = sample(grid, [](double th) { return std::sin(th); });
  const auto d = spectral_derivative(f, 1);
  for (int j = 0; j < grid.n; ++j)
    CHECK(d.values[j] == Catch::Approx(std::cos(grid.node(j))).margin(1e-12));
}

TEST_CASE("spectral derivatives of low modes are exact") {
  const CircleGrid grid(32);
  const auto f = sample(grid, [](double th) { return std::sin(th); });
  const auto d1 = spectral_derivative(f, 1);
  for (int j = 0; j < grid.n; ++j)
    CHECK(d1.values[j] == Catch::Approx(std::cos(grid.node(j))).margin(1e-12));

  const auto c = constant_samples(grid, 3.25);
  for (int order : {1, 2, 3}) {
    const auto dc = spectral_derivative(c, order);
    CHECK(state_norm(dc) == 0.0);
  }

  const auto g = sample(grid, [](double th) { return std::cos(3.0 * th); });
  const auto d2 = spectral_derivative(g, 2);
  for (int j = 0; j < grid.n; ++j)
    CHECK(d2.values[j] ==
          Catch::Approx(-9.0 * std::cos(3.0 * grid.node(j))).margin(1e-12));

  CHECK_THROWS_AS(spectral_derivative(f, 0), InvalidCountError);
}

TEST_CASE("sample arithmetic respects grids and the sup norm") {
  const CircleGrid g32(32), g64(64);
  const auto f = sample(g32, [](double th) { return std::sin(th); });
  const auto h = sample(g64, [](double th) { return std::sin(th); });
  CHECK_THROWS_AS(f + h, DimensionError);
  CHECK_THROWS_AS(FunctionSamples(g32, Eigen::ArrayXd::Zero(16)), DimensionError);
  CHECK_THROWS_AS(spectral_derivative(f, 9), InvalidCountError);

  const auto combo = f * 2.0 - f;
  CHECK(state_norm(combo - f) == 0.0);
  CHECK(state_norm(f) == Catch::Approx(1.0).margin(1e-12));
  CHECK(state_finite(f));
}

TEST_CASE("trigonometric interpolation is exact for resolved polynomials") {
  const CircleGrid grid(32);
  auto poly = [](double th) {
    return 0.7 - 0.4 * std::cos(th) + 0.2 * std::sin(3.0 * th) + 0.05 * std::cos(7.0 * th);
  };
  const auto f = sample(grid, poly);
  const TrigInterpolant interp(f);
  for (int j = 0; j < grid.n; ++j)
    CHECK(interp(grid.node(j)) == Catch::Approx(f.values[j]).margin(1e-12));
  for (std::uint64_t i = 0; i < 50; ++i) {
    const double theta = kTwoPi * philox_uniform(77, 0, i);
    CHECK(interp(theta) == Catch::Approx(poly(theta)).margin(1e-12));
  }
}

TEST_CASE("fourier probes have unit sup norm") {
  const CircleGrid grid(64);
  const FourierUnitProbe probe{grid};
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto f = probe(123, trial);
    CHECK(state_norm(f) == Catch::Approx(1.0).margin(1e-12));
  }
}
