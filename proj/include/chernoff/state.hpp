#pragma once

#include <Eigen/Dense>

namespace chernoff {

// Matrix-testbed states are Euclidean vectors. Function samples on a grid
// provide their own state_norm overload (discrete sup norm) next to their
// definition; generic algorithms pick the right one by overload resolution.
inline double state_norm(const Eigen::VectorXd& x) { return x.norm(); }

inline bool state_finite(const Eigen::VectorXd& x) { return x.allFinite(); }

}  // namespace chernoff
