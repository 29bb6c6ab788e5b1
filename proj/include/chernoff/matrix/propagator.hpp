#pragma once

#include <Eigen/Dense>
#include <string>

#include "chernoff/errors.hpp"
#include "chernoff/matrix/exp.hpp"
#include "chernoff/matrix/family.hpp"

namespace chernoff::matrix {

enum class PropagatorVariant {
  kFrozenExponential,  // Q_{t1,t2} = exp((t2-t1) A(t2))
  kImplicitEuler,      // Q_{t1,t2} = (I - (t2-t1) A(t2))^{-1}
  kExplicitEuler,      // Q_{t1,t2} = I + (t2-t1) A(t2)
};

// Two-parameter family built from a generator family; the generator is
// frozen at the right endpoint t2 so (Q_{tau-dtau,tau} - I)/dtau -> A_tau.
struct MatrixPropagator {
  MatrixGeneratorFamily family;
  PropagatorVariant variant = PropagatorVariant::kFrozenExponential;

  Eigen::MatrixXd step_matrix(double t1, double t2) const {
    if (!(t1 < t2))
      throw InvalidIntervalError("propagator step requires t1 < t2");
    const double dt = t2 - t1;
    const Eigen::MatrixXd a = family.at(t2);
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
    switch (variant) {
      case PropagatorVariant::kFrozenExponential:
        return matrix_exp(dt * a);
      case PropagatorVariant::kImplicitEuler: {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(ident - dt * a);
        if (!lu.isInvertible())
          throw SingularStepError("singular resolvent I - dt*A(t2) on step (" +
                                  std::to_string(t1) + ", " + std::to_string(t2) +
                                  ")");
        return lu.inverse();
      }
      case PropagatorVariant::kExplicitEuler: {
        // Uniformly bounded products need the documented mesh cap.
        const double cap = 0.5 / spectral_norm(a);
        if (dt > cap)
          throw InvalidStepError("explicit-euler step " + std::to_string(dt) +
                                 " exceeds mesh cap 1/(2*||A(t2)||) = " +
                                 std::to_string(cap));
        return ident + dt * a;
      }
    }
    throw Error("unreachable propagator variant");
  }

  Eigen::VectorXd operator()(double t1, double t2, const Eigen::VectorXd& x) const {
    if (x.size() != family.dim)
      throw DimensionError("state dimension does not match propagator family");
    return step_matrix(t1, t2) * x;
  }
};

inline MatrixPropagator build_propagator(MatrixGeneratorFamily family,
                                         PropagatorVariant variant) {
  return MatrixPropagator{std::move(family), variant};
}

}  // namespace chernoff::matrix
