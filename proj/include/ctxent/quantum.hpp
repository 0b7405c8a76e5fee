#ifndef CTXENT_QUANTUM_HPP
#define CTXENT_QUANTUM_HPP

#include <cstdint>
#include <vector>

#include "ctxent/linalg.hpp"

namespace ctxent {

/// Hermitian, positive-semidefinite, unit-trace matrix. Validated on
/// construction; immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix, double tol = kStructuralTol);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Orthogonal projector with its rank (the rounded trace).
class Projector {
 public:
  explicit Projector(ComplexMatrix matrix, double tol = kStructuralTol);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int rank() const { return rank_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
  int rank_;
};

/// Ordered family of pairwise-orthogonal projectors summing to the
/// identity; models a projective measurement with size() outcomes.
/// Outcome order is significant (reconstruction tables index into it).
class Context {
 public:
  explicit Context(std::vector<Projector> projectors,
                   double tol = kStructuralTol);

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  bool is_maximal() const { return projectors_.size() == static_cast<std::size_t>(dim_); }
  const Projector& operator[](std::size_t i) const { return projectors_[i]; }
  const std::vector<Projector>& projectors() const { return projectors_; }

  auto begin() const { return projectors_.begin(); }
  auto end() const { return projectors_.end(); }

 private:
  int dim_;
  std::vector<Projector> projectors_;
};

/// Probability weights, clamped into [0, 1] on construction and normalized;
/// rejects inputs whose raw sum strays from 1 by more than tol.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> weights,
                                   double tol = kStructuralTol);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Validates a projector family as a context.
/// Throws NotProjector, NotOrthogonal or IncompleteSum.
Context make_context(const std::vector<ComplexMatrix>& projectors,
                     double tol = kStructuralTol);

/// Born weights (tr(rho P_1), ..., tr(rho P_k)).
ProbabilityDistribution born(const DensityMatrix& rho, const Context& c);

/// Maximal context of rank-1 eigenprojectors of rho, eigenvalue-ascending.
/// Any orthonormal eigenbasis is acceptable for degenerate spectra.
Context eigencontext(const DensityMatrix& rho);

/// Merges outcomes: each partition block becomes the sum of the indicated
/// projectors. Blocks are 0-based index sets and must partition 0..k-1.
Context coarsen(const Context& c,
                const std::vector<std::vector<std::size_t>>& partition);

/// True iff cprime is a coarse-graining of c, i.e. some set partition of
/// c's projectors has block-sums matching cprime's projectors within
/// Frobenius tolerance. Returns false on incomparable contexts.
bool is_coarsening(const Context& cprime, const Context& c,
                   double tol = 1e-8);

/// Projector-multiset equality within Frobenius tolerance, order ignored.
bool same_context(const Context& a, const Context& b, double tol = 1e-8);

/// Conjugates every projector: (U P_1 U^dag, ..., U P_k U^dag).
Context rotate_context(const Context& c, const ComplexMatrix& u);

/// Context of the standard basis rank-1 projectors e_i e_i^dag.
Context standard_basis_context(int dim);

/// Maximal context from the columns of a seeded pseudo-Haar unitary.
Context random_maximal_context(int dim, std::uint64_t seed);

/// Seeded random state of the given rank: eigenvalues from a simplex draw,
/// eigenbasis from haar_like_unitary.
DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed);

/// Seeded random set partition of {0, ..., k-1} into at least one block.
std::vector<std::vector<std::size_t>> random_partition(std::size_t k,
                                                       std::uint64_t seed);

}  // namespace ctxent

#endif  // CTXENT_QUANTUM_HPP
