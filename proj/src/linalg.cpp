#include "ctxent/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ctxent/errors.hpp"
#include "ctxent/quantum.hpp"
#include "ctxent/rng.hpp"

namespace ctxent {

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u -
                 ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_projector(const ComplexMatrix& p, double tol) {
  return is_hermitian(p, tol) && max_abs(p * p - p) <= tol;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol))
    raise(Errc::NotHermitian, "hermitian_eigensystem input");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    raise(Errc::ConvergenceFailure, "hermitian eigensolver did not converge");

  Eigensystem sys{solver.eigenvalues(), solver.eigenvectors()};

  // Residual gate: M V = V diag(lambda) well within structural tolerance.
  const double scale = std::max(1.0, max_abs(m));
  const double residual =
      max_abs(m * sys.eigenvectors -
              sys.eigenvectors * sys.eigenvalues.asDiagonal().toDenseMatrix()
                                     .cast<Complex>());
  if (residual > kEigenResidualTol * scale)
    raise(Errc::ConvergenceFailure, "eigensolver residual above tolerance");
  return sys;
}

ComplexMatrix unitary_exp(const ComplexMatrix& a, double theta, double tol) {
  if (!is_hermitian(a, tol)) raise(Errc::NotHermitian, "unitary_exp generator");
  const Eigensystem sys = hermitian_eigensystem(a, tol);
  const auto n = a.rows();
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i)
    phases(i) = std::polar(1.0, theta * sys.eigenvalues(i));
  return sys.eigenvectors * phases.asDiagonal() * sys.eigenvectors.adjoint();
}

ComplexMatrix haar_like_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) raise(Errc::OutOfRange, "haar_like_unitary needs dim >= 1");
  Rng rng(seed);
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(r, c) = Complex(re, im);
    }

  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Absorb the R diagonal phases so the factorization is unique and the
  // output depends only on (dim, seed).
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    raise(Errc::DimensionMismatch, "trace_distance operands");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix() - b.matrix(),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    raise(Errc::ConvergenceFailure, "trace_distance eigensolver");
  const double d = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace ctxent
