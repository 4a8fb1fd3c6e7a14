#include "coulombium/error.hpp"

namespace coulombium {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonZeroMean: return "NonZeroMean";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::DivergingEnergy: return "DivergingEnergy";
    case ErrorCode::LineSearchStalled: return "LineSearchStalled";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace coulombium
