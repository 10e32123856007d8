#include "ia3/error.hpp"

namespace ia3 {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Feasibility: return "feasibility";
    case ErrorKind::DegenerateChannel: return "degenerate-channel";
    case ErrorKind::DegenerateSpan: return "degenerate-span";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::Index: return "index";
  }
  return "unknown";
}

}  // namespace ia3
