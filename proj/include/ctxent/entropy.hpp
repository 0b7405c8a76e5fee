#ifndef CTXENT_ENTROPY_HPP
#define CTXENT_ENTROPY_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ctxent/quantum.hpp"

namespace ctxent {

/// Shannon entropy in nats, with 0 ln 0 := 0.
double shannon(const ProbabilityDistribution& p);

/// H(x) = -x ln x - (1-x) ln(1-x) on [0, 1].
double binary_entropy(double x);

/// The unique c in [0, 1/2] with binary_entropy(c) = h, by bisection to
/// 1e-14 absolute tolerance. Inputs within tol outside [0, ln 2] are
/// clamped; anything further out throws OutOfRange.
double invert_binary_entropy(double h, double tol = kStructuralTol);

/// Shannon entropy of the Born distribution of rho in context c.
double contextual_entropy(const DensityMatrix& rho, const Context& c);

/// Shannon entropy of the eigenvalue spectrum.
double von_neumann(const DensityMatrix& rho);

/// True iff s majorizes r: equal sums and dominating prefix sums after
/// sorting both in descending order.
bool majorizes(const std::vector<double>& s, const std::vector<double>& r,
               double tol = kStructuralTol);

/// Opaque query interface from contexts to entropy values, with an atomic
/// query counter. Reconstruction consumes only this interface; the optional
/// hidden state exists solely for the spectral proposer and for residual
/// diagnostics in test harnesses.
class EntropyOracle {
 public:
  using Evaluator = std::function<double(const Context&)>;

  EntropyOracle(int dim, Evaluator evaluator,
                std::optional<DensityMatrix> hidden = std::nullopt);

  int dim() const { return dim_; }

  /// Evaluates the contextual entropy of c and bumps the counter.
  /// Results outside [0, ln dim] (beyond 1e-9) throw OutOfRange.
  double query(const Context& c) const;

  std::uint64_t query_count() const { return count_->load(); }

  /// Test-harness hook; nullptr on measure-backed oracles. Algorithm code
  /// must not read it outside the spectral proposer and residual reporting.
  const DensityMatrix* hidden_state() const {
    return hidden_ ? &*hidden_ : nullptr;
  }

 private:
  int dim_;
  Evaluator evaluator_;
  std::optional<DensityMatrix> hidden_;
  std::shared_ptr<std::atomic<std::uint64_t>> count_;
};

/// Oracle computing contextual_entropy(rho, .) against a hidden copy of rho.
EntropyOracle oracle_from_state(const DensityMatrix& rho);

}  // namespace ctxent

#endif  // CTXENT_ENTROPY_HPP
