#include "ctxent/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctxent/errors.hpp"
#include "ctxent/rng.hpp"

namespace ctxent {

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    raise(Errc::InvalidState, "density matrix must be square and nonempty");
  if (!is_hermitian(matrix_, tol))
    raise(Errc::NotHermitian, "density matrix");
  if (std::abs(matrix_.trace().real() - 1.0) > tol ||
      std::abs(matrix_.trace().imag()) > tol)
    raise(Errc::InvalidState, "density matrix trace must be 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    raise(Errc::ConvergenceFailure, "density matrix spectrum");
  if (solver.eigenvalues().minCoeff() < -tol)
    raise(Errc::InvalidState, "density matrix has a negative eigenvalue");
}

Projector::Projector(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    raise(Errc::NotProjector, "projector must be square and nonempty");
  if (!is_projector(matrix_, tol)) raise(Errc::NotProjector, "P^2 != P");
  const double tr = matrix_.trace().real();
  rank_ = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank_) > tol * matrix_.rows() || rank_ < 1)
    raise(Errc::NotProjector, "projector rank is not a positive integer");
}

Context::Context(std::vector<Projector> projectors, double tol)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty())
    raise(Errc::IncompleteSum, "context needs at least one projector");
  dim_ = projectors_.front().dim();
  for (const auto& p : projectors_)
    if (p.dim() != dim_)
      raise(Errc::DimensionMismatch, "context projectors of unequal dims");

  for (std::size_t i = 0; i < projectors_.size(); ++i)
    for (std::size_t j = i + 1; j < projectors_.size(); ++j)
      if (max_abs(projectors_[i].matrix() * projectors_[j].matrix()) > tol)
        raise(Errc::NotOrthogonal,
              "projectors " + std::to_string(i) + " and " + std::to_string(j));

  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& p : projectors_) sum += p.matrix();
  if (max_abs(sum - ComplexMatrix::Identity(dim_, dim_)) > tol)
    raise(Errc::IncompleteSum, "projectors do not sum to the identity");
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> weights,
                                                 double tol)
    : weights_(std::move(weights)) {
  if (weights_.empty())
    raise(Errc::NotADistribution, "empty weight vector");
  double sum = 0.0;
  for (double& w : weights_) {
    if (w < -tol)
      raise(Errc::NotADistribution,
            "weight " + std::to_string(w) + " below zero");
    if (w > 1.0 + tol)
      raise(Errc::NotADistribution,
            "weight " + std::to_string(w) + " above one");
    w = std::clamp(w, 0.0, 1.0);
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol)
    raise(Errc::NotADistribution, "weights sum to " + std::to_string(sum));
  for (double& w : weights_) w /= sum;
}

Context make_context(const std::vector<ComplexMatrix>& projectors,
                     double tol) {
  std::vector<Projector> ps;
  ps.reserve(projectors.size());
  for (const auto& m : projectors) ps.emplace_back(m, tol);
  return Context(std::move(ps), tol);
}

ProbabilityDistribution born(const DensityMatrix& rho, const Context& c) {
  if (rho.dim() != c.dim())
    raise(Errc::DimensionMismatch, "born: state and context dims differ");
  std::vector<double> weights;
  weights.reserve(c.size());
  for (const auto& p : c)
    weights.push_back((rho.matrix() * p.matrix()).trace().real());
  // Input tolerances (state trace, context completeness) bound the raw sum
  // away from 1 by a few structural tolerances at most.
  return ProbabilityDistribution(std::move(weights), 4 * kStructuralTol);
}

Context eigencontext(const DensityMatrix& rho) {
  const Eigensystem sys = hermitian_eigensystem(rho.matrix());
  std::vector<Projector> ps;
  ps.reserve(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    const ComplexVector v = sys.eigenvectors.col(i);
    ps.emplace_back(ComplexMatrix(v * v.adjoint()));
  }
  return Context(std::move(ps));
}

Context coarsen(const Context& c,
                const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<bool> seen(c.size(), false);
  for (const auto& block : partition) {
    if (block.empty()) raise(Errc::InvalidPartition, "empty block");
    for (std::size_t idx : block) {
      if (idx >= c.size())
        raise(Errc::InvalidPartition, "index " + std::to_string(idx));
      if (seen[idx])
        raise(Errc::InvalidPartition,
              "index " + std::to_string(idx) + " repeated");
      seen[idx] = true;
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    raise(Errc::InvalidPartition, "partition does not cover all outcomes");

  std::vector<Projector> ps;
  ps.reserve(partition.size());
  for (const auto& block : partition) {
    ComplexMatrix sum = ComplexMatrix::Zero(c.dim(), c.dim());
    for (std::size_t idx : block) sum += c[idx].matrix();
    ps.emplace_back(std::move(sum));
  }
  return Context(std::move(ps));
}

namespace {

double frobenius(const ComplexMatrix& m) { return m.norm(); }

}  // namespace

bool is_coarsening(const Context& cprime, const Context& c, double tol) {
  if (cprime.dim() != c.dim())
    raise(Errc::DimensionMismatch, "is_coarsening: context dims differ");
  if (cprime.size() > c.size()) return false;

  // A fine projector P can contribute to a coarse block Q only when its
  // range lies inside Q's range, i.e. tr(Q P) = rank(P); orthogonality of
  // the coarse projectors makes that block unique.
  std::vector<std::vector<std::size_t>> blocks(cprime.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool assigned = false;
    for (std::size_t a = 0; a < cprime.size(); ++a) {
      const double overlap =
          (cprime[a].matrix() * c[i].matrix()).trace().real();
      if (std::abs(overlap - c[i].rank()) <= 1e-6) {
        blocks[a].push_back(i);
        assigned = true;
        break;
      }
    }
    if (!assigned) return false;
  }

  for (std::size_t a = 0; a < cprime.size(); ++a) {
    ComplexMatrix sum = ComplexMatrix::Zero(c.dim(), c.dim());
    for (std::size_t i : blocks[a]) sum += c[i].matrix();
    if (frobenius(sum - cprime[a].matrix()) > tol) return false;
  }
  return true;
}

bool same_context(const Context& a, const Context& b, double tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& pa : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (frobenius(pa.matrix() - b[j].matrix()) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Context rotate_context(const Context& c, const ComplexMatrix& u) {
  if (u.rows() != c.dim() || u.cols() != c.dim())
    raise(Errc::DimensionMismatch, "rotate_context: unitary dim");
  if (!is_unitary(u)) raise(Errc::NotUnitary, "rotate_context");
  std::vector<Projector> ps;
  ps.reserve(c.size());
  for (const auto& p : c)
    ps.emplace_back(ComplexMatrix(u * p.matrix() * u.adjoint()));
  return Context(std::move(ps));
}

Context standard_basis_context(int dim) {
  if (dim < 1) raise(Errc::OutOfRange, "standard_basis_context dim");
  std::vector<Projector> ps;
  ps.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(i, i) = 1.0;
    ps.emplace_back(std::move(p));
  }
  return Context(std::move(ps));
}

Context random_maximal_context(int dim, std::uint64_t seed) {
  return rotate_context(standard_basis_context(dim),
                        haar_like_unitary(dim, seed));
}

DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim)
    raise(Errc::OutOfRange, "random_density_matrix needs 1 <= rank <= dim");
  Rng rng(derive_seed(seed, 0x5eed));
  std::vector<double> lambdas(rank);
  double sum = 0.0;
  for (double& l : lambdas) {
    l = -std::log(rng.uniform_pos());  // exponential => uniform on simplex
    sum += l;
  }
  for (double& l : lambdas) l /= sum;

  const ComplexMatrix u = haar_like_unitary(dim, derive_seed(seed, 0xba515));
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < rank; ++i) {
    const ComplexVector v = u.col(i);
    rho += lambdas[static_cast<std::size_t>(i)] * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

std::vector<std::vector<std::size_t>> random_partition(std::size_t k,
                                                       std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x9a47));
  const std::size_t nblocks = 1 + rng.below(k);
  std::vector<std::vector<std::size_t>> blocks(nblocks);
  // Guarantee no block stays empty, then scatter the rest.
  std::vector<std::size_t> indices(k);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = k - 1; i > 0; --i)
    std::swap(indices[i], indices[rng.below(i + 1)]);
  for (std::size_t b = 0; b < nblocks; ++b) blocks[b].push_back(indices[b]);
  for (std::size_t i = nblocks; i < k; ++i)
    blocks[rng.below(nblocks)].push_back(indices[i]);
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return blocks;
}

}  // namespace ctxent
