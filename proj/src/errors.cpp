#include "ctxent/errors.hpp"

namespace ctxent {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotProjector: return "NotProjector";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::IncompleteSum: return "IncompleteSum";
    case Errc::InvalidState: return "InvalidState";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotADistribution: return "NotADistribution";
    case Errc::ProposerUnavailable: return "ProposerUnavailable";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    case Errc::NoZeroContext: return "NoZeroContext";
    case Errc::AmbiguousZero: return "AmbiguousZero";
    case Errc::InvalidTable: return "InvalidTable";
    case Errc::SecondTableAmbiguous: return "SecondTableAmbiguous";
    case Errc::MatchFailure: return "MatchFailure";
  }
  return "UnknownError";
}

}  // namespace ctxent
