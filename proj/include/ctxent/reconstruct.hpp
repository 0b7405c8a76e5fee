#ifndef CTXENT_RECONSTRUCT_HPP
#define CTXENT_RECONSTRUCT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctxent/entropy.hpp"

namespace ctxent {

/// Knobs for the floating-point-safe version of the exact comparisons in
/// the reconstruction tables.
struct ReconstructionConfig {
  /// Tolerance for all table-entry comparisons: sums-to-one, matching an
  /// entry to S/2, and the (b2) zero-pattern test.
  double value_tol = 1e-9;
  /// Threshold below which a contextual entropy counts as zero (purity).
  double entropy_tol = 1e-9;
  /// Rotation angle for fixing unitaries, in radians; must lie in (0, pi).
  double theta = 0.37;
  /// Re-draws of the rotation generator when a genericity post-check fails.
  int max_retries = 8;
  std::uint64_t seed = 0;
  /// Random restarts of the search proposer.
  int search_restarts = 64;
  /// Gap |1 - 2c| below which the two qubit orderings are reported as one
  /// candidate; wider than value_tol because inverting the binary entropy
  /// near 1/2 is ill-conditioned (error ~ sqrt of the entropy error).
  double qubit_gap_tol = 1e-6;
};

enum class Proposer { spectral, search };

enum class Branch { pure, mixed_a, mixed_b1, mixed_b2, qubit_ambiguous };

std::string to_string(Branch b);

/// Two-row table of binary-entropy inversion pairs, one column per
/// projector of the minimizing maximal context: top[i] <= 1/2 <= bottom[i].
struct SolutionTable {
  std::vector<double> top;
  std::vector<double> bottom;
  double top_row_sum = 0.0;  // S
};

/// One eigenvalue picked per column, summing to 1.
struct UniqueAssignment {
  std::vector<double> lambdas;
};

/// Case (b2): columns j and k both hold c = S/2 < 1/2 and the state is
/// c P_j + (1-c) P_k in one of the two orders.
struct AmbiguousPair {
  std::size_t j = 0;
  std::size_t k = 0;
  double c = 0.0;
};

using Assignment = std::variant<UniqueAssignment, AmbiguousPair>;

struct ReconstructionReport {
  /// One recovered state, except for the unresolvable qubit case which
  /// carries both orderings.
  std::vector<DensityMatrix> candidates;
  Branch branch = Branch::mixed_a;
  /// Oracle queries consumed by this run.
  std::uint64_t query_count = 0;
  /// Contexts whose entropy was queried during this run.
  std::uint64_t contexts_used = 0;
  /// Trace distance to the hidden state, when the oracle exposes one.
  std::optional<double> residual;

  const DensityMatrix& state() const { return candidates.front(); }
};

/// Step 1: a maximal context minimizing the queried entropy, plus the
/// queried value there. The spectral proposer reads the oracle's hidden
/// eigenbasis (test-harness shortcut; the value still comes from a query);
/// the search proposer is oracle-only: seeded random restarts followed by
/// coordinate descent over two-plane rotation angles.
std::pair<Context, double> minimize_over_maximal_contexts(
    const EntropyOracle& oracle, Proposer proposer,
    const ReconstructionConfig& cfg);

/// Unitary leaving projector i of a maximal context invariant while moving
/// every other projector off the context. Exists only for dim >= 3; built
/// from the all-ones Hermitian generator on the orthogonal complement of
/// P_i and verified post-hoc, re-drawn with perturbed theta on failure.
ComplexMatrix fixing_unitary(const Context& c, std::size_t i,
                             const ReconstructionConfig& cfg);

/// Pure branch: finds the unique projector of c_rho equal to the hidden
/// pure state by querying the n rotated contexts C_i; exactly the rotated
/// context fixing the state keeps zero entropy.
Projector identify_pure(const EntropyOracle& oracle, const Context& c_rho,
                        const ReconstructionConfig& cfg);

/// Step 2: queries the n two-outcome contexts (P_i, 1 - P_i) and inverts
/// each binary entropy into a table column (c_i, 1 - c_i).
SolutionTable eigenvalue_candidates(const EntropyOracle& oracle,
                                    const Context& c_rho);

/// Step 3: picks one entry per column summing to 1. Cases: (a) top row
/// sums to 1; (b1) exactly one column matches S/2, flipped to its bottom
/// entry; (b2) two columns match S/2 with zeros elsewhere, which leaves the
/// two orderings of an AmbiguousPair. Any other pattern is InvalidTable
/// (the oracle is not the contextual entropy of any state).
Assignment select_assignment(const SolutionTable& table,
                             const ReconstructionConfig& cfg);

/// Resolves a (b2) pair: re-runs Steps 2-3 against contexts rotated by a
/// unitary fixing P_j; the second table has a unique assignment whose j-th
/// entry equals lambda_j, picking between the two orderings.
std::vector<double> disambiguate_b2(const EntropyOracle& oracle,
                                    const Context& c_rho,
                                    const AmbiguousPair& pair,
                                    const ReconstructionConfig& cfg);

/// Full pipeline for dim >= 3. Errors from the steps are re-thrown with the
/// step name prefixed to the message.
ReconstructionReport reconstruct(const EntropyOracle& oracle,
                                 const ReconstructionConfig& cfg = {},
                                 Proposer proposer = Proposer::spectral);

/// Qubit variant: Steps 1-2 only; returns both eigenvalue orderings unless
/// the recovered spectrum is balanced within qubit_gap_tol.
ReconstructionReport reconstruct_qubit(const EntropyOracle& oracle,
                                       const ReconstructionConfig& cfg = {},
                                       Proposer proposer = Proposer::spectral);

}  // namespace ctxent

#endif  // CTXENT_RECONSTRUCT_HPP
