#include "cohfreeze/error.hpp"

namespace cohfreeze {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotGeneralizedPermutation: return "NotGeneralizedPermutation";
    case ErrorKind::EmptyKraus: return "EmptyKraus";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::NotXState: return "NotXState";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::DimTooLarge: return "DimTooLarge";
    case ErrorKind::NotProbabilityVector: return "NotProbabilityVector";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace cohfreeze
