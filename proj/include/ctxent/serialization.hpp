#ifndef CTXENT_SERIALIZATION_HPP
#define CTXENT_SERIALIZATION_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "ctxent/gleason.hpp"
#include "ctxent/reconstruct.hpp"

// File formats. Complex matrices serialize as
//   {"dim": n, "entries": [[[re, im], ...], ...]}   (row-major),
// states as {"dim": n, "matrix": <matrix>},
// contexts as {"dim": n, "projectors": [<matrix>, ...]},
// reconstruction reports as
//   {"branch": s, "queries": q, "contexts_used": c,
//    "state": <matrix> | "candidates": [<matrix>, ...], "residual": r?}.

namespace ctxent {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

nlohmann::json context_to_json(const Context& c);
Context context_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ReconstructionReport& report);

nlohmann::json roundtrip_to_json(const GleasonRoundTrip& rt);

/// Unreadable or unwritable path. Distinct from Error so the CLI can map
/// file-system trouble and content trouble to different exit codes.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throw IoError on unreadable paths; malformed content surfaces as
/// nlohmann::json exceptions or ctxent::Error from the validating
/// constructors.
DensityMatrix load_state(const std::string& path);
Context load_context(const std::string& path);

void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace ctxent

#endif  // CTXENT_SERIALIZATION_HPP
