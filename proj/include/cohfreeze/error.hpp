#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohfreeze {

enum class ErrorKind {
  NotHermitian,
  NotUnitary,
  NotPSD,
  NotDensityMatrix,
  InvalidPermutation,
  DimMismatch,
  NotGeneralizedPermutation,
  EmptyKraus,
  NotComplete,
  OutOfRange,
  SamplingExhausted,
  NotXState,
  HypothesisNotMet,
  DimTooLarge,
  NotProbabilityVector,
  ParseError,
};

std::string_view error_name(ErrorKind kind);

// All validation failures raised by the library. The CLI maps these to exit
// code 2 and prints error_name() followed by the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace cohfreeze
