#pragma once

#include <stdexcept>

namespace chernoff {

// Error taxonomy shared by all modules. The type identifies the category,
// the message carries the offending values.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidIntervalError : Error { using Error::Error; };
struct InvalidCountError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct InvalidStepError : Error { using Error::Error; };
struct InsufficientDataError : Error { using Error::Error; };
struct SingularStepError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct OutsideTubeError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace chernoff
