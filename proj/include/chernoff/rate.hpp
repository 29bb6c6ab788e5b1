#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "chernoff/errors.hpp"

namespace chernoff {

struct RatePoint {
  double mesh = 0.0;
  double error = 0.0;
};

// log(error) ~ slope * log(mesh) + intercept.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares on (log mesh, log error). Zero-error records are
// dropped; fewer than three usable records is an error.
inline RateFit fit_rate(const std::vector<RatePoint>& records) {
  std::vector<double> xs, ys;
  xs.reserve(records.size());
  ys.reserve(records.size());
  for (const auto& r : records) {
    if (!(r.mesh > 0.0))
      throw InvalidIntervalError("fit_rate requires positive meshes");
    if (r.error > 0.0) {
      xs.push_back(std::log(r.mesh));
      ys.push_back(std::log(r.error));
    }
  }
  if (xs.size() < 3)
    throw InsufficientDataError("fit_rate needs at least 3 records with error > 0");

  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= double(xs.size());
  ybar /= double(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0))
    throw InsufficientDataError("fit_rate needs distinct meshes");
  const double slope = sxy / sxx;
  return RateFit{slope, ybar - slope * xbar};
}

// (mesh, error) study plus its fitted log-log rate; records kept sorted by
// decreasing mesh.
struct ConvergenceReport {
  std::vector<RatePoint> records;
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;

  static ConvergenceReport build(std::vector<RatePoint> recs) {
    std::sort(recs.begin(), recs.end(),
              [](const RatePoint& a, const RatePoint& b) { return a.mesh > b.mesh; });
    for (const auto& r : recs)
      if (r.error < 0.0)
        throw InvalidIntervalError("ConvergenceReport requires nonnegative errors");
    const RateFit fit = fit_rate(recs);
    return ConvergenceReport{std::move(recs), fit.slope, fit.intercept};
  }
};

}  // namespace chernoff
