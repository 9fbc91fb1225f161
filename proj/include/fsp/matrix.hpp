#pragma once

#include <Eigen/Dense>
#include <string>

#include "fsp/errors.hpp"

namespace fsp {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrixd = Matrix<double>;
using Vectord = Vector<double>;

/// Dense symmetric matrix. Construction symmetrizes as (M + M')/2, which is
/// exact for already-symmetric input, so downstream code never has to reason
/// about which triangle is authoritative.
template <typename Scalar>
class SymMatrix {
 public:
  SymMatrix() = default;

  template <typename Derived>
  explicit SymMatrix(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) {
      throw DimensionMismatch("SymMatrix requires a square matrix, got " +
                              std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
    }
    mat_ = (m + m.transpose()) / Scalar(2);
  }

  static SymMatrix identity(Index n) { return SymMatrix(Matrix<Scalar>::Identity(n, n)); }

  Index dim() const { return mat_.rows(); }
  const Matrix<Scalar>& mat() const { return mat_; }
  Scalar operator()(Index i, Index j) const { return mat_(i, j); }

 private:
  Matrix<Scalar> mat_;
};

using SymMatrixd = SymMatrix<double>;

/// Largest absolute entry of a - b; both must conform.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  if (a.size() == 0) return typename DerivedA::Scalar(0);
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar max_abs_diff(const SymMatrix<Scalar>& a, const SymMatrix<Scalar>& b) {
  return max_abs_diff(a.mat(), b.mat());
}

}  // namespace fsp
