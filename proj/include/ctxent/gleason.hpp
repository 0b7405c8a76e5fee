#ifndef CTXENT_GLEASON_HPP
#define CTXENT_GLEASON_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "ctxent/reconstruct.hpp"

namespace ctxent {

/// Finitely additive probability assignment on projectors, represented
/// behaviorally by an evaluator (the projection lattice is uncountable).
/// State-backed measures keep the generating state around so downstream
/// consumers can use the spectral proposer.
class ProjectionMeasure {
 public:
  enum class Kind { state_backed, table_backed };
  using Evaluator = std::function<double(const Projector&)>;

  ProjectionMeasure(int dim, Evaluator evaluator, Kind kind,
                    std::optional<DensityMatrix> backing = std::nullopt);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  double operator()(const Projector& p) const { return evaluator_(p); }
  const DensityMatrix* backing_state() const {
    return backing_ ? &*backing_ : nullptr;
  }

 private:
  int dim_;
  Evaluator evaluator_;
  Kind kind_;
  std::optional<DensityMatrix> backing_;
};

/// mu_rho(P) := tr(rho P).
ProjectionMeasure measure_from_state(const DensityMatrix& rho);

/// Finite override atop a base measure: projectors within match_tol
/// (Frobenius) of the given one evaluate to the fixed value. Used to build
/// defective measures for testing; the result is table-backed.
ProjectionMeasure with_override(const ProjectionMeasure& base,
                                const ComplexMatrix& projector, double value,
                                double match_tol = 1e-8);

struct MeasureCheckReport {
  double normalization_error = 0.0;       // |mu(1) - 1|
  double worst_range_violation = 0.0;     // distance of values from [0, 1]
  double worst_additivity_violation = 0.0;
  /// Orthogonal pair witnessing the worst additivity violation.
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> witness;
  int samples = 0;

  bool passed(double tol = kStructuralTol) const {
    return normalization_error <= tol && worst_range_violation <= tol &&
           worst_additivity_violation <= tol;
  }
};

/// Samples orthogonal projector pairs from seeded random maximal contexts
/// and reports the worst violations of normalization, range and
/// additivity. Violations are report content, never exceptions.
MeasureCheckReport check_measure(const ProjectionMeasure& mu, int samples,
                                 std::uint64_t seed);

/// Oracle evaluating the Shannon entropy of (mu(P_1), ..., mu(P_k)).
/// Per-context renormalization is rejected: weights failing to sum to 1
/// within tolerance make the query throw NotADistribution.
EntropyOracle oracle_from_measure(const ProjectionMeasure& mu);

struct GleasonRoundTrip {
  ReconstructionReport reconstruction;
  /// max |tr(rho P) - mu(P)| over the sampled projections.
  double max_deviation = 0.0;
  int samples = 0;
};

/// Reconstructs a state from the measure's entropy oracle alone and checks
/// it reproduces mu on sampled projections of every rank.
GleasonRoundTrip gleason_roundtrip(const ProjectionMeasure& mu,
                                   const ReconstructionConfig& cfg = {},
                                   int sample_projections = 100);

}  // namespace ctxent

#endif  // CTXENT_GLEASON_HPP
