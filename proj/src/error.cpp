#include "spinstep/error.hpp"

namespace spinstep {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::SingularMatrix: return "singular matrix";
    case ErrorCode::ThresholdDegeneracy: return "threshold degeneracy";
    case ErrorCode::MassPole: return "mass pole";
    case ErrorCode::UnitarityViolation: return "unitarity violation";
    case ErrorCode::ConventionMismatch: return "convention mismatch";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown";
}

}  // namespace spinstep
