#pragma once

#include <stdexcept>
#include <string>
#include <iostream>

namespace gegd {

// Error taxonomy used across the library. The CLI maps these onto exit codes.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

}  // namespace gegd
