#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aqrsm {

// Integer values are part of the CSV schema (error_code column).
enum class ErrorCode : int {
  none = 0,
  zero_flux = 1,
  multiple_steady_states = 2,
  numeric_failure = 3,
  invalid_parameter = 4,
  invalid_input = 5,
  step_size = 6,
  not_applicable = 7,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::none: return "none";
    case ErrorCode::zero_flux: return "zero-flux";
    case ErrorCode::multiple_steady_states: return "multiple-steady-states";
    case ErrorCode::numeric_failure: return "numeric-failure";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::step_size: return "step-size";
    case ErrorCode::not_applicable: return "not-applicable";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& what) : Error(ErrorCode::invalid_parameter, what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(ErrorCode::invalid_input, what) {}
};

struct NumericFailure : Error {
  explicit NumericFailure(const std::string& what) : Error(ErrorCode::numeric_failure, what) {}
};

struct ZeroFlux : Error {
  explicit ZeroFlux(const std::string& what) : Error(ErrorCode::zero_flux, what) {}
};

struct MultipleSteadyStates : Error {
  explicit MultipleSteadyStates(const std::string& what)
      : Error(ErrorCode::multiple_steady_states, what) {}
};

struct StepSizeError : Error {
  explicit StepSizeError(const std::string& what) : Error(ErrorCode::step_size, what) {}
};

}  // namespace aqrsm
