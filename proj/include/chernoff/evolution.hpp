#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chernoff/errors.hpp"
#include "chernoff/parallel.hpp"
#include "chernoff/partition.hpp"
#include "chernoff/philox.hpp"
#include "chernoff/rate.hpp"
#include "chernoff/state.hpp"

namespace chernoff {

// Two-parameter operator family Q_{t1,t2} acting on states.
template <typename Q, typename State>
concept PropagatorFamilyFor =
    requires(const Q& q, double t1, double t2, const State& x) {
      { q(t1, t2, x) } -> std::convertible_to<State>;
    };

// One-parameter generator family A_t acting on states.
template <typename A, typename State>
concept GeneratorFamilyFor = requires(const A& a, double t, const State& x) {
  { a(t, x) } -> std::convertible_to<State>;
};

// Q_{t0,t1} Q_{t1,t2} ... Q_{tn-1,tn} x: the rightmost factor is applied to
// x first, matching the operator-product order of the composition claim.
template <typename State, typename Q>
  requires PropagatorFamilyFor<Q, State>
State chernoff_apply(const Q& q, const Partition& p, State x) {
  const auto& ts = p.nodes();
  for (std::size_t j = ts.size() - 1; j >= 1; --j)
    x = q(ts[j - 1], ts[j], x);
  return x;
}

// Randomized lower-bound estimate of sup ||Q_{tau1,tau2}...Q_{tau_{k-1},tau_k}||
// over node sequences s = tau1 < ... < tau_k <= t and unit-norm probes.
// make_probe(key, trial) must return a unit-norm state. Families with a
// resolution floor (quadrature kernels) can pass min_gap > 0 to keep
// sampled gaps representable.
template <typename State, typename Q, typename ProbeGen>
  requires PropagatorFamilyFor<Q, State>
double product_bound_probe(const Q& q, const TimeInterval& interval, int trials,
                           int max_factors, std::uint64_t seed,
                           ProbeGen&& make_probe, double min_gap = 0.0) {
  if (trials < 1) throw InvalidCountError("product_bound_probe requires trials >= 1");
  if (max_factors < 2)
    throw InvalidCountError("product_bound_probe requires max_factors >= 2");
  if (!(interval.s < interval.t))
    throw InvalidIntervalError("product_bound_probe requires s < t");

  const std::uint64_t node_key = derive_seed(seed, 0xA5501);
  const std::uint64_t probe_key = derive_seed(seed, 0xA5502);

  std::vector<double> ratios(std::size_t(trials), 0.0);
  parallel_for(std::size_t(trials), [&](std::size_t trial) {
    // k nodes: tau_1 = s fixed, k-1 sorted uniforms in (s, t].
    const double pick = philox_uniform(node_key, trial, 0);
    const int k = 2 + int(pick * double(max_factors - 1)) % (max_factors - 1);
    std::vector<double> raw(static_cast<std::size_t>(k));
    raw[0] = interval.s;
    for (int j = 1; j < k; ++j)
      raw[std::size_t(j)] =
          interval.s + (interval.t - interval.s) *
                           philox_uniform(node_key, trial, std::uint64_t(j));
    std::sort(raw.begin() + 1, raw.end());

    std::vector<double> nodes;
    nodes.reserve(raw.size());
    nodes.push_back(raw[0]);
    for (std::size_t j = 1; j < raw.size(); ++j) {
      double next = std::max(raw[j], nodes.back() + min_gap);
      if (min_gap <= 0.0 && !(next > nodes.back()))
        next = std::nextafter(nodes.back(),
                              std::numeric_limits<double>::infinity());
      if (next <= interval.t) nodes.push_back(next);
    }
    if (nodes.size() < 2) nodes.push_back(interval.t);

    State x = make_probe(probe_key, trial);
    const double norm_in = state_norm(x);
    for (std::size_t j = nodes.size() - 1; j >= 1; --j)
      x = q(nodes[j - 1], nodes[j], x);
    ratios[trial] = state_norm(x) / norm_in;
  });

  double bound = 0.0;
  for (double r : ratios) bound = std::max(bound, r);
  return bound;
}

// Defect table for the derivative-consistency diagnostic:
//   defect(tau, dtau, x) = || (Q_{tau-dtau,tau} x - x)/dtau - A_tau x ||.
struct ConsistencyDefects {
  std::vector<double> tau_grid;
  std::vector<double> dtau_grid;
  std::vector<Eigen::MatrixXd> defects;  // defects[p](i, j): probe p, tau i, dtau j

  // Worst defect over probes and taus at one dtau.
  double max_defect(std::size_t dtau_index) const {
    double m = 0.0;
    for (const auto& table : defects)
      for (Eigen::Index i = 0; i < table.rows(); ++i)
        m = std::max(m, table(i, Eigen::Index(dtau_index)));
    return m;
  }

  // (dtau, max defect) pairs, ready for fit_rate.
  std::vector<RatePoint> max_defect_records() const {
    std::vector<RatePoint> out;
    out.reserve(dtau_grid.size());
    for (std::size_t j = 0; j < dtau_grid.size(); ++j)
      out.push_back({dtau_grid[j], max_defect(j)});
    return out;
  }
};

template <typename State, typename Q, typename A>
  requires PropagatorFamilyFor<Q, State> && GeneratorFamilyFor<A, State>
ConsistencyDefects generator_consistency_probe(const Q& q, const A& gen,
                                               const std::vector<State>& probes,
                                               const std::vector<double>& tau_grid,
                                               const std::vector<double>& dtau_grid) {
  for (double dtau : dtau_grid)
    if (!(dtau > 0.0))
      throw InvalidStepError("generator_consistency_probe requires dtau > 0");

  ConsistencyDefects out;
  out.tau_grid = tau_grid;
  out.dtau_grid = dtau_grid;
  out.defects.reserve(probes.size());
  for (const State& x : probes) {
    Eigen::MatrixXd table(Eigen::Index(tau_grid.size()),
                          Eigen::Index(dtau_grid.size()));
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
      const double tau = tau_grid[i];
      const State ax = gen(tau, x);
      for (std::size_t j = 0; j < dtau_grid.size(); ++j) {
        const double dtau = dtau_grid[j];
        const State qx = q(tau - dtau, tau, x);
        table(Eigen::Index(i), Eigen::Index(j)) =
            state_norm((qx - x) * (1.0 / dtau) - ax);
      }
    }
    out.defects.push_back(std::move(table));
  }
  return out;
}

// || U(s,r) U(r,t) x - U(s,t) x ||: defect in the two-parameter composition
// law. u must accept equal endpoints (identity).
template <typename State, typename U>
  requires PropagatorFamilyFor<U, State>
double composition_defect(const U& u, double s, double r, double t,
                          const State& x) {
  if (!(s <= r && r <= t))
    throw InvalidIntervalError("composition_defect requires s <= r <= t");
  const State via = u(s, r, u(r, t, x));
  const State direct = u(s, t, x);
  return state_norm(via - direct);
}

// Unit-norm Gaussian probe vectors for finite-dimensional state spaces.
struct GaussianUnitProbe {
  int dim = 1;

  Eigen::VectorXd operator()(std::uint64_t key, std::uint64_t trial) const {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i)
      v[i] = philox_gaussian(key, trial, std::uint64_t(i));
    const double n = v.norm();
    if (n < 1e-300) {
      v.setZero();
      v[0] = 1.0;
      return v;
    }
    return v / n;
  }
};

}  // namespace chernoff
