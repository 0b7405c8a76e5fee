#ifndef CTXENT_ERRORS_HPP
#define CTXENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctxent {

enum class Errc {
  NotHermitian,
  NotUnitary,
  NotProjector,
  NotOrthogonal,
  IncompleteSum,
  InvalidState,
  DimensionMismatch,
  ConvergenceFailure,
  InvalidPartition,
  OutOfRange,
  LengthMismatch,
  NotADistribution,
  ProposerUnavailable,
  DimensionTooSmall,
  RetriesExhausted,
  NoZeroContext,
  AmbiguousZero,
  InvalidTable,
  SecondTableAmbiguous,
  MatchFailure,
};

const char* to_string(Errc code) noexcept;

/// Library-wide exception; every throwing operation raises this with a
/// machine-checkable code and a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ctxent

#endif  // CTXENT_ERRORS_HPP
