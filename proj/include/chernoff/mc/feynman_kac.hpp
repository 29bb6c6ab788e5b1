#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chernoff/circle/drift.hpp"
#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"
#include "chernoff/parallel.hpp"
#include "chernoff/philox.hpp"

namespace chernoff::mc {

struct McConfig {
  std::int64_t paths = 100;
  int substeps = 10;
  std::uint64_t seed = 0;
  bool antithetic = false;

  void validate() const {
    if (paths < 100) throw InvalidCountError("McConfig requires paths >= 100");
    if (substeps < 10) throw InvalidCountError("McConfig requires substeps >= 10");
    if (antithetic && paths % 2 != 0)
      throw InvalidCountError("antithetic sampling requires an even path count");
  }
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(samples)
  std::int64_t paths = 0;
};

// Euler-Maruyama for the chart SDE d theta = b(tau, theta) dtau + dB with
// b(tau, theta) = psi'(tau) cos(psi(tau) - theta). Noise is keyed by
// (seed, path, step) through the counter-based generator, so the terminal
// set is a pure function of (s, t, theta0, cfg) no matter how many threads
// run it. Antithetic pairs (2i, 2i+1) share the draw of pair i with
// opposite signs. Terminal angles are reported in [0, 2*pi).
inline std::vector<double> simulate_paths(double s, double t, double theta0,
                                          const circle::DriftPath& phi,
                                          const McConfig& cfg) {
  if (!(s < t)) throw InvalidIntervalError("simulate_paths requires s < t");
  cfg.validate();
  phi.validate_time(s);
  phi.validate_time(t);

  const double h = (t - s) / double(cfg.substeps);
  const double sqrt_h = std::sqrt(h);
  const std::uint64_t key = derive_seed(cfg.seed, 0x5DE1);

  std::vector<double> terminals(static_cast<std::size_t>(cfg.paths));
  parallel_for(std::size_t(cfg.paths), [&](std::size_t i) {
    const std::uint64_t draw_index = cfg.antithetic ? (i / 2) : i;
    const double sign = (cfg.antithetic && (i % 2 == 1)) ? -1.0 : 1.0;
    double theta = theta0;
    for (int m = 0; m < cfg.substeps; ++m) {
      const double tau = s + h * double(m);
      const double xi = sign * philox_gaussian(key, draw_index, std::uint64_t(m));
      theta += phi.chart_drift(tau, theta) * h + sqrt_h * xi;
    }
    double wrapped = std::fmod(theta, circle::kTwoPi);
    if (wrapped < 0.0) wrapped += circle::kTwoPi;
    terminals[i] = wrapped;
  });
  return terminals;
}

namespace detail {

// Mean and standard error with a fixed pairwise reduction. For antithetic
// sets the independent samples are the pair means.
inline McEstimate estimate(const std::vector<double>& values, bool antithetic) {
  std::vector<double> samples;
  if (antithetic) {
    samples.resize(values.size() / 2);
    for (std::size_t p = 0; p < samples.size(); ++p)
      samples[p] = 0.5 * (values[2 * p] + values[2 * p + 1]);
  } else {
    samples = values;
  }
  const std::size_t n = samples.size();
  const double mean = pairwise_sum(samples) / double(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i)
    sq[i] = (samples[i] - mean) * (samples[i] - mean);
  const double var = n > 1 ? pairwise_sum(sq) / double(n - 1) : 0.0;
  return McEstimate{mean, std::sqrt(var / double(n)),
                    std::int64_t(values.size())};
}

}  // namespace detail

// Estimate of E[g(theta_T)] for a closed-form observable.
inline McEstimate mc_expectation(const std::vector<double>& terminals,
                                 const std::function<double(double)>& g,
                                 bool antithetic = false) {
  if (terminals.empty())
    throw InsufficientDataError("mc_expectation requires terminal samples");
  std::vector<double> values(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) values[i] = g(terminals[i]);
  return detail::estimate(values, antithetic);
}

// Grid observables are evaluated by trigonometric interpolation.
inline McEstimate mc_expectation(const std::vector<double>& terminals,
                                 const circle::FunctionSamples& g,
                                 bool antithetic = false) {
  if (terminals.empty())
    throw InsufficientDataError("mc_expectation requires terminal samples");
  const circle::TrigInterpolant interp(g);
  std::vector<double> values(terminals.size());
  parallel_for(terminals.size(),
               [&](std::size_t i) { values[i] = interp(terminals[i]); });
  return detail::estimate(values, antithetic);
}

struct CrossValidation {
  bool agree = false;
  double gap = 0.0;
  double band = 0.0;  // 3 * stderr + bias allowance
};

// Agreement test |chernoff(theta0) - mc.mean| <= 3*stderr + bias_allowance.
inline CrossValidation cross_validate(double chernoff_at_theta0,
                                      const McEstimate& mc,
                                      double bias_allowance) {
  const double gap = std::abs(chernoff_at_theta0 - mc.mean);
  const double band = 3.0 * mc.stderr_ + bias_allowance;
  return CrossValidation{gap <= band, gap, band};
}

inline CrossValidation cross_validate(const circle::FunctionSamples& chernoff,
                                      double theta0, const McEstimate& mc,
                                      double bias_allowance) {
  return cross_validate(circle::trig_interp(chernoff, theta0), mc, bias_allowance);
}

// Default weak-order-one discretization bias bound used by the experiments.
inline double default_bias_allowance(double s, double t, int substeps) {
  return 5.0 * ((t - s) / double(substeps));
}

}  // namespace chernoff::mc
