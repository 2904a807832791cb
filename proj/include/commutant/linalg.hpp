#ifndef COMMUTANT_LINALG_HPP
#define COMMUTANT_LINALG_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "commutant/core.hpp"

namespace commutant {

/// Pivot threshold used for invertibility decisions throughout the library.
inline constexpr double kInvertibilityPivot = 1e-10;

/// Pivot threshold below which a determinant is reported as exactly zero.
inline constexpr double kDeterminantPivot = 1e-12;

template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Scalar> pivots;  // in elimination order
  int swap_sign = 1;
};

/// Gaussian elimination with partial pivoting. A column whose largest
/// remaining candidate does not exceed tol contributes no pivot.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& M,
                                                 double tol) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out;
  out.reduced = M;
  auto& R = out.reduced;
  Index row = 0;
  for (Index col = 0; col < R.cols() && row < R.rows(); ++col) {
    Index best = row;
    for (Index i = row + 1; i < R.rows(); ++i)
      if (std::abs(R(i, col)) > std::abs(R(best, col))) best = i;
    if (!(std::abs(R(best, col)) > tol)) continue;
    if (best != row) {
      R.row(best).swap(R.row(row));
      out.swap_sign = -out.swap_sign;
    }
    const Scalar pivot = R(row, col);
    for (Index i = row + 1; i < R.rows(); ++i) {
      const Scalar factor = R(i, col) / pivot;
      R.row(i).tail(R.cols() - col) -= factor * R.row(row).tail(R.cols() - col);
    }
    out.pivots.push_back(pivot);
    ++row;
  }
  return out;
}

/// Number of pivots exceeding tol under partial-pivot row elimination.
template <typename Derived>
Index matrix_rank(const Eigen::MatrixBase<Derived>& M, double tol) {
  if (!(tol > 0)) throw ArgumentError("matrix_rank: tolerance must be positive");
  return static_cast<Index>(row_echelon(M, tol).pivots.size());
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != M.cols()) throw DimensionError("determinant of a non-square matrix");
  const auto ech = row_echelon(M, kDeterminantPivot);
  if (static_cast<Index>(ech.pivots.size()) < M.rows()) return Scalar(0);
  Scalar det = Scalar(ech.swap_sign);
  for (const Scalar& p : ech.pivots) det *= p;
  return det;
}

template <typename Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& M, double threshold = kInvertibilityPivot) {
  if (M.rows() != M.cols()) return false;
  return static_cast<Index>(row_echelon(M, threshold).pivots.size()) == M.rows();
}

/// Gauss-Jordan inverse with partial pivoting.
/// Throws SingularityError when a pivot does not exceed threshold.
template <typename Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& M,
                                         double threshold = kInvertibilityPivot) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != M.cols()) throw DimensionError("inverse of a non-square matrix");
  const Index n = M.rows();
  Matrix<Scalar> A = M;
  Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index best = col;
    for (Index i = col + 1; i < n; ++i)
      if (std::abs(A(i, col)) > std::abs(A(best, col))) best = i;
    if (!(std::abs(A(best, col)) > threshold))
      throw SingularityError("matrix is singular to pivot threshold");
    A.row(best).swap(A.row(col));
    inv.row(best).swap(inv.row(col));
    const Scalar pivot = A(col, col);
    A.row(col) /= pivot;
    inv.row(col) /= pivot;
    for (Index i = 0; i < n; ++i) {
      if (i == col) continue;
      const Scalar factor = A(i, col);
      if (factor == Scalar(0)) continue;
      A.row(i) -= factor * A.row(col);
      inv.row(i) -= factor * inv.row(col);
    }
  }
  return inv;
}

/// True iff every entry is 0 or 1 and each row and column holds exactly one 1.
template <typename Derived>
bool is_permutation_matrix(const Eigen::MatrixBase<Derived>& M) {
  if (M.rows() != M.cols()) return false;
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0 && M(i, j) != 1) return false;
  for (Index i = 0; i < M.rows(); ++i)
    if (M.row(i).sum() != 1 || M.col(i).sum() != 1) return false;
  return true;
}

}  // namespace commutant

#endif  // COMMUTANT_LINALG_HPP
