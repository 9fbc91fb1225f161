#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>

#include "fsp/errors.hpp"
#include "fsp/matrix.hpp"

// Positive-definite matrix operations. Every delicate numerical step in the
// library (inversion, inverse square root, Cholesky) funnels through here so
// the definiteness policy lives in exactly one place.

namespace fsp {

/// Definiteness tolerance, relative to the largest diagonal entry. The models
/// this library works with are correlation-metric (unit diagonal), so the
/// relative and absolute scales coincide there.
inline constexpr double kPdRelTolerance = 1e-10;

template <typename Scalar>
struct SpdCheck {
  Scalar min_eigenvalue;  // smallest eigenvalue of the symmetrized input
  Scalar tolerance;       // absolute threshold the test used
  bool is_pd;             // min_eigenvalue > tolerance
};

namespace detail {

/// Absolute eigenvalue threshold for a given matrix: rel_tol scaled by the
/// largest diagonal entry. A matrix with no positive diagonal entry cannot be
/// PD; the unscaled rel_tol is returned so the comparison still fails.
template <typename Scalar>
Scalar pd_threshold(const Matrix<Scalar>& m, Scalar rel_tol) {
  if (m.rows() == 0) return rel_tol;
  const Scalar max_diag = m.diagonal().maxCoeff();
  return max_diag > Scalar(0) ? rel_tol * max_diag : rel_tol;
}

/// Eigendecomposition with the definiteness gate applied. Throws
/// NotPositiveDefinite unless every eigenvalue clears the threshold.
template <typename Scalar>
Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> checked_eigen(
    const SymMatrix<Scalar>& m, Scalar rel_tol, const char* caller) {
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(m.mat());
  if (es.info() != Eigen::Success) {
    throw NotPositiveDefinite(std::string(caller) + ": eigendecomposition failed");
  }
  const Scalar tol = pd_threshold(m.mat(), rel_tol);
  const Scalar min_eig = es.eigenvalues().minCoeff();
  if (!(min_eig > tol)) {
    throw NotPositiveDefinite(std::string(caller) + ": min eigenvalue " +
                              std::to_string(static_cast<double>(min_eig)) +
                              " below threshold " +
                              std::to_string(static_cast<double>(tol)));
  }
  return es;
}

}  // namespace detail

/// Definiteness probe. Never throws on an indefinite matrix; callers that
/// need a hard failure use the throwing operations below.
template <typename Scalar>
SpdCheck<Scalar> spd_check(const SymMatrix<Scalar>& m,
                           Scalar rel_tol = Scalar(kPdRelTolerance)) {
  SpdCheck<Scalar> out;
  out.tolerance = detail::pd_threshold(m.mat(), rel_tol);
  if (m.dim() == 0) {
    out.min_eigenvalue = Scalar(0);
    out.is_pd = false;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(m.mat(), Eigen::EigenvaluesOnly);
  out.min_eigenvalue =
      es.info() == Eigen::Success ? es.eigenvalues().minCoeff()
                                  : -std::numeric_limits<Scalar>::infinity();
  out.is_pd = out.min_eigenvalue > out.tolerance;
  return out;
}

/// Inverse of an SPD matrix. Definiteness is gated by eigenvalues, the solve
/// itself by Cholesky.
template <typename Scalar>
SymMatrix<Scalar> invert_spd(const SymMatrix<Scalar>& m,
                             Scalar rel_tol = Scalar(kPdRelTolerance)) {
  detail::checked_eigen(m, rel_tol, "invert_spd");
  Eigen::LLT<Matrix<Scalar>> llt(m.mat());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("invert_spd: Cholesky factorization failed");
  }
  Matrix<Scalar> inv = llt.solve(Matrix<Scalar>::Identity(m.dim(), m.dim()));
  return SymMatrix<Scalar>(inv);
}

/// M^(-1/2) via symmetric eigendecomposition: V diag(lambda^(-1/2)) V'.
template <typename Scalar>
SymMatrix<Scalar> inv_sqrt_spd(const SymMatrix<Scalar>& m,
                               Scalar rel_tol = Scalar(kPdRelTolerance)) {
  auto es = detail::checked_eigen(m, rel_tol, "inv_sqrt_spd");
  Vector<Scalar> d = es.eigenvalues().array().rsqrt();
  Matrix<Scalar> s = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
  return SymMatrix<Scalar>(s);
}

/// Lower Cholesky factor L with L L' = M and positive diagonal.
template <typename Scalar>
Matrix<Scalar> cholesky_lower(const SymMatrix<Scalar>& m,
                              Scalar rel_tol = Scalar(kPdRelTolerance)) {
  detail::checked_eigen(m, rel_tol, "cholesky_lower");
  Eigen::LLT<Matrix<Scalar>> llt(m.mat());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("cholesky_lower: Cholesky factorization failed");
  }
  return Matrix<Scalar>(llt.matrixL());
}

}  // namespace fsp
