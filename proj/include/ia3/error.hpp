#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ia3 {

enum class ErrorKind {
  InvalidInput,       // non-finite entries, empty matrices, bad tolerances
  DimensionMismatch,  // incompatible shapes
  Configuration,      // NetworkConfig outside the supported region
  Feasibility,        // not enough interference-free dimensions at a BS
  DegenerateChannel,  // singular combined channel, rank-deficient stack
  DegenerateSpan,     // spans_equal on rank-deficient inputs
  NumericalFailure,   // solver did not converge, singular covariance
  Index,              // cell / user index out of range
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ia3
