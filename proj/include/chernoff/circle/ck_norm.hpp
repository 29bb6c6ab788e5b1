#pragma once

#include "chernoff/circle/grid.hpp"
#include "chernoff/errors.hpp"

namespace chernoff::circle {

// C^k norm realized on the single periodic chart:
//   sum_{lambda=0..k} sup_j |f^(lambda)(theta_j)|,
// derivatives by Fourier differentiation. Beyond k = 5 spectral
// differentiation of samples is unreliable at the default grid sizes.
inline double ck_norm(const FunctionSamples& f, int k) {
  if (k < 0) throw InvalidCountError("ck_norm requires k >= 0");
  if (k > 5) throw InvalidCountError("ck_norm supports k <= 5");
  double total = f.values.abs().maxCoeff();
  for (int lambda = 1; lambda <= k; ++lambda)
    total += spectral_derivative(f, lambda).values.abs().maxCoeff();
  return total;
}

}  // namespace chernoff::circle
