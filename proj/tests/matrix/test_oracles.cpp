#include <catch2/catch_amalgamated.hpp>

#include <chernoff/evolution.hpp>
#include <chernoff/matrix/exp.hpp>
#include <chernoff/matrix/family.hpp>
#include <chernoff/matrix/oracle.hpp>

#include <Eigen/Dense>
#include <cmath>

using namespace chernoff;
using namespace chernoff::matrix;

namespace {

MatrixGeneratorFamily constant_family(const Eigen::Matrix3d& a) {
  return MatrixGeneratorFamily{3, [a](double) -> Eigen::MatrixXd { return a; }};
}

Eigen::Matrix3d sample_matrix() {
  Eigen::Matrix3d a;
  a << -0.5, 0.4, 0.0, -0.4, -0.3, 0.2, 0.0, -0.2, -0.6;
  return a;
}

}  // namespace

TEST_CASE("adaptive quadrature reaches closed forms") {
  const double got = adaptive_quadrature(
      [](double t) { return 1.0 + t * std::sin(t); }, 0.0, 1.0, 1e-13);
  const double want = 1.0 + std::sin(1.0) - std::cos(1.0);
  CHECK(std::abs(got - want) < 1e-13);

  CHECK(adaptive_quadrature([](double) { return 2.0; }, 0.3, 0.3) == 0.0);
  CHECK(std::abs(adaptive_quadrature([](double t) { return t; }, 0.0, 1.0) - 0.5) <
        1e-14);
}

TEST_CASE("ode oracle at s = t is the identity") {
  const auto fam = presets::dissipative3();
  const Eigen::MatrixXd u = ode_evolution_oracle(fam, 0.7, 0.7, 100);
  CHECK((u - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("ode oracle validates its arguments") {
  const auto fam = presets::dissipative3();
  CHECK_THROWS_AS(ode_evolution_oracle(fam, 1.0, 0.0, 100), InvalidIntervalError);
  CHECK_THROWS_AS(ode_evolution_oracle(fam, 0.0, 1.0, 0), InvalidCountError);
}

TEST_CASE("autonomous case reduces to the plain exponential") {
  const Eigen::Matrix3d a = sample_matrix();
  const Eigen::MatrixXd u = ode_evolution_oracle(constant_family(a), 0.0, 1.0, 1000);
  CHECK((u - matrix_exp(a)).norm() < 1e-10);
}

TEST_CASE("ode oracle self-converges at fourth order") {
  // A(sigma) = A0 + sigma * A1 with [A0, A1] != 0.
  Eigen::Matrix3d a1;
  a1 << 0.0, 0.5, 0.0, -0.5, 0.0, 0.3, 0.0, -0.3, 0.0;
  const Eigen::Matrix3d a0 = sample_matrix();
  const MatrixGeneratorFamily fam{
      3, [a0, a1](double t) -> Eigen::MatrixXd { return a0 + t * a1; }};

  const Eigen::MatrixXd ref = ode_evolution_oracle(fam, 0.0, 1.0, 4000);
  const double e1 = (ode_evolution_oracle(fam, 0.0, 1.0, 50) - ref).norm();
  const double e2 = (ode_evolution_oracle(fam, 0.0, 1.0, 100) - ref).norm();
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.6);
  CHECK(order < 4.4);
}

TEST_CASE("commuting oracle closed forms") {
  const Eigen::Matrix3d a0 = presets::dissipative_base3();

  const CommutingFamilySpec unit{a0, presets::profile_constant(1.0)};
  CHECK((commuting_evolution_oracle(unit, 0.0, 1.0) - matrix_exp(a0)).norm() < 1e-13);

  const CommutingFamilySpec ramp{a0, presets::profile_ramp()};
  CHECK((commuting_evolution_oracle(ramp, 0.0, 1.0) - matrix_exp(0.5 * a0)).norm() <
        1e-13);
}

TEST_CASE("commuting and ODE oracles agree on the same family") {
  const CommutingFamilySpec spec{presets::dissipative_base3(),
                                 presets::profile_one_plus_t_sin_t()};
  const Eigen::MatrixXd a = commuting_evolution_oracle(spec, 0.1, 1.0);
  const Eigen::MatrixXd b = ode_evolution_oracle(spec.family(), 0.1, 1.0, 4000);
  CHECK((a - b).norm() < 1e-9);
}

TEST_CASE("ode oracle satisfies the composition law") {
  const auto fam = presets::dissipative3();
  const auto oracle = [&fam](double a, double b, const Eigen::VectorXd& x) {
    return Eigen::VectorXd(ode_evolution_oracle(fam, a, b, 2000) * x);
  };
  const Eigen::VectorXd x = (Eigen::VectorXd(3) << 0.3, -1.0, 0.5).finished();
  for (auto [s, r, t] : {std::array<double, 3>{0.0, 0.4, 1.0},
                         std::array<double, 3>{0.1, 0.7, 0.8},
                         std::array<double, 3>{0.25, 0.3, 0.95}})
    CHECK(composition_defect(oracle, s, r, t, x) <= 1e-8);
}

TEST_CASE("the dissipative preset has log-norm -1 for all t") {
  const auto fam = presets::dissipative3();
  for (double t : {0.0, 0.3, 1.0, 2.4})
    CHECK(log_norm(fam.at(t)) == Catch::Approx(-1.0).margin(1e-12));
  // and the two rotation generators do not commute
  const Eigen::Matrix3d k1 = presets::rotation_generator_z();
  const Eigen::Matrix3d k2 = presets::rotation_generator_x();
  CHECK((k1 * k2 - k2 * k1).norm() > 0.5);
}

TEST_CASE("generator family checks state dimensions and linearity") {
  const auto fam = presets::dissipative3();
  CHECK_THROWS_AS(fam(0.0, Eigen::VectorXd::Ones(4)), DimensionError);

  const Eigen::VectorXd x = (Eigen::VectorXd(3) << 1.0, 2.0, -1.0).finished();
  const Eigen::VectorXd y = (Eigen::VectorXd(3) << -0.3, 0.7, 0.2).finished();
  const Eigen::VectorXd lhs = fam(0.4, 2.0 * x + 3.0 * y);
  const Eigen::VectorXd rhs = 2.0 * fam(0.4, x) + 3.0 * fam(0.4, y);
  CHECK((lhs - rhs).norm() < 1e-13);
}
