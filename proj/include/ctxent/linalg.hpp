#ifndef CTXENT_LINALG_HPP
#define CTXENT_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace ctxent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for structural predicates (hermiticity, unitarity,
/// projector property, trace normalization).
inline constexpr double kStructuralTol = 1e-9;

/// Residual bound the eigensolver output must meet, two orders below the
/// structural tolerance.
inline constexpr double kEigenResidualTol = 1e-11;

/// Entrywise max-abs norm, the metric behind all structural predicates.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_unitary(const ComplexMatrix& u, double tol = kStructuralTol);
bool is_projector(const ComplexMatrix& p, double tol = kStructuralTol);

struct Eigensystem {
  RealVector eigenvalues;   // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, column i pairs with eigenvalues[i]
};

/// Full spectral decomposition of a Hermitian matrix.
/// Throws NotHermitian if the input fails the predicate, ConvergenceFailure
/// if the solver does not meet the residual bound.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m,
                                  double tol = kStructuralTol);

/// exp(i*theta*A) for Hermitian A, computed through the eigensystem of A.
ComplexMatrix unitary_exp(const ComplexMatrix& a, double theta,
                          double tol = kStructuralTol);

/// Deterministic pseudo-Haar unitary: QR orthonormalization of a seeded
/// complex Gaussian matrix with the R diagonal phases absorbed, so the same
/// (dim, seed) pair reproduces the same matrix bit for bit.
ComplexMatrix haar_like_unitary(int dim, std::uint64_t seed);

class DensityMatrix;

/// Half the absolute eigenvalue sum of (a - b); in [0, 1].
/// Throws DimensionMismatch when the operands live on different spaces.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ctxent

#endif  // CTXENT_LINALG_HPP
