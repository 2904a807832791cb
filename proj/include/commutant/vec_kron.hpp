#ifndef COMMUTANT_VEC_KRON_HPP
#define COMMUTANT_VEC_KRON_HPP

#include <string>

#include "commutant/core.hpp"

namespace commutant {

/// Column-stacking of a matrix: output((j-1)p + i) = X(i, j).
template <typename Derived>
Vector<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> colmajor = X;
  return Eigen::Map<const Vector<Scalar>>(colmajor.data(), colmajor.size());
}

enum class VecLayout { ColumnMajor, RowMajor };

/// Matricization of a length-pq vector into a p x q matrix.
/// ColumnMajor: M(i,j) = x(i + j p); RowMajor: M(i,j) = x(j + i q) (0-based).
template <typename Derived>
Matrix<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& x, Index p, Index q,
                                       VecLayout layout = VecLayout::ColumnMajor) {
  using Scalar = typename Derived::Scalar;
  if (p < 1 || q < 1) throw ArgumentError("unvec: p and q must be positive");
  if (x.size() != p * q)
    throw DimensionError("unvec: vector of length " + std::to_string(x.size()) +
                         " cannot fill a " + std::to_string(p) + "x" + std::to_string(q) +
                         " matrix");
  Matrix<Scalar> M(p, q);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < q; ++j)
      M(i, j) = layout == VecLayout::ColumnMajor ? x(i + j * p) : x(j + i * q);
  return M;
}

/// Kronecker product: block (i, j) of the result is A(i, j) * B.
template <typename DA, typename DB>
Matrix<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

/// (C^T kron A) vec(B), which equals vec(A B C).
template <typename DA, typename DB, typename DC>
Vector<typename DA::Scalar> vec_sandwich(const Eigen::MatrixBase<DA>& A,
                                         const Eigen::MatrixBase<DB>& B,
                                         const Eigen::MatrixBase<DC>& C) {
  if (A.cols() != B.rows() || B.cols() != C.rows())
    throw DimensionError("vec_sandwich: factors are not conformable");
  return kron(C.transpose(), A) * vec(B);
}

/// Tr(A B) for A (m x n) and B (n x m), computed as vec(B^T)^T vec(A).
template <typename DA, typename DB>
typename DA::Scalar trace_via_vec(const Eigen::MatrixBase<DA>& A,
                                  const Eigen::MatrixBase<DB>& B) {
  if (A.cols() != B.rows() || A.rows() != B.cols())
    throw DimensionError("trace_via_vec: A B is not square");
  return vec(B.transpose()).dot(vec(A));
}

}  // namespace commutant

#endif  // COMMUTANT_VEC_KRON_HPP
