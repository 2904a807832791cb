#ifndef COMMUTANT_COMMUTATION_MATRIX_HPP
#define COMMUTANT_COMMUTATION_MATRIX_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "commutant/core.hpp"
#include "commutant/permutation.hpp"
#include "commutant/vec_kron.hpp"

namespace commutant {

/// The pq x pq commutation matrix K_{p,q}, the unique matrix with
/// K vec(X) = vec(X^T) for every p x q matrix X.
///
/// Viewed as a p x q grid of q x p blocks, block (i, j) carries its single 1
/// at local position (j, i). Stored as the row permutation: row s of the dense
/// form has its 1 in column perm()(s).
class CommutationMatrix {
 public:
  CommutationMatrix(Index p, Index q) : p_(p), q_(q) {
    if (p < 1 || q < 1)
      throw ArgumentError("commutation matrix needs p, q >= 1 (got " + std::to_string(p) +
                          ", " + std::to_string(q) + ")");
    std::vector<Index> images(static_cast<std::size_t>(p * q));
    for (Index i = 0; i < p; ++i)
      for (Index j = 0; j < q; ++j) images[static_cast<std::size_t>(i * q + j)] = j * p + i;
    perm_ = Permutation(std::move(images));
  }

  Index p() const { return p_; }
  Index q() const { return q_; }
  Index size() const { return p_ * q_; }
  const Permutation& perm() const { return perm_; }

  template <typename Scalar = double>
  Matrix<Scalar> dense() const {
    return perm_.to_matrix<Scalar>();
  }

  /// K x in O(pq) through the stored permutation.
  template <typename Derived>
  Vector<typename Derived::Scalar> apply(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != size())
      throw DimensionError("apply: vector of length " + std::to_string(x.size()) +
                           " for K_{" + std::to_string(p_) + "," + std::to_string(q_) + "}");
    Vector<typename Derived::Scalar> y(size());
    for (Index s = 0; s < size(); ++s) y(s) = x(perm_(s));
    return y;
  }

  /// K M K^T, i.e. entry (s, t) = M(perm(s), perm(t)).
  template <typename Derived>
  Matrix<typename Derived::Scalar> conjugate(const Eigen::MatrixBase<Derived>& M) const {
    if (M.rows() != size() || M.cols() != size())
      throw DimensionError("conjugate: matrix is not " + std::to_string(size()) + "x" +
                           std::to_string(size()));
    Matrix<typename Derived::Scalar> out(size(), size());
    for (Index t = 0; t < size(); ++t)
      for (Index s = 0; s < size(); ++s) out(s, t) = M(perm_(s), perm_(t));
    return out;
  }

  int determinant() const { return perm_.sign(); }

  Index trace() const {
    Index fixed = 0;
    for (Index s = 0; s < size(); ++s)
      if (perm_(s) == s) ++fixed;
    return fixed;
  }

  friend bool operator==(const CommutationMatrix&, const CommutationMatrix&) = default;

 private:
  Index p_;
  Index q_;
  Permutation perm_;
};

inline CommutationMatrix build_commutation(Index p, Index q) { return CommutationMatrix(p, q); }

/// K_{p,q} assembled as sum_{i,j} (e_{p,i} kron e_{q,j})(e_{q,j} kron e_{p,i})^T.
template <typename Scalar = double>
Matrix<Scalar> build_commutation_rank1(Index p, Index q) {
  if (p < 1 || q < 1) throw ArgumentError("build_commutation_rank1 needs p, q >= 1");
  Matrix<Scalar> K = Matrix<Scalar>::Zero(p * q, p * q);
  for (Index i = 0; i < p; ++i) {
    const Vector<Scalar> ep = Vector<Scalar>::Unit(p, i);
    for (Index j = 0; j < q; ++j) {
      const Vector<Scalar> eq = Vector<Scalar>::Unit(q, j);
      K += kron(ep, eq) * kron(eq, ep).transpose();
    }
  }
  return K;
}

/// Block coordinates (i, j, k, l) of K_{p,q} to flat coordinates (s, t), all
/// 1-based: s = (i-1) q + k, t = (j-1) p + l.
inline std::pair<Index, Index> block_to_flat(Index i, Index j, Index k, Index l, Index p,
                                             Index q) {
  if (p < 1 || q < 1) throw ArgumentError("block_to_flat needs p, q >= 1");
  if (i < 1 || i > p || j < 1 || j > q || k < 1 || k > q || l < 1 || l > p)
    throw RangeError("block_to_flat: block coordinates out of range");
  return {(i - 1) * q + k, (j - 1) * p + l};
}

/// Exact inverse of block_to_flat (1-based): i = ceil(s/q), k = s - (i-1) q,
/// j = ceil(t/p), l = t - (j-1) p.
inline std::array<Index, 4> flat_to_block(Index s, Index t, Index p, Index q) {
  if (p < 1 || q < 1) throw ArgumentError("flat_to_block needs p, q >= 1");
  if (s < 1 || s > p * q || t < 1 || t > p * q)
    throw RangeError("flat_to_block: flat coordinates out of range");
  const Index i = (s + q - 1) / q;
  const Index j = (t + p - 1) / p;
  return {i, j, s - (i - 1) * q, t - (j - 1) * p};
}

/// det K_{p,q} as the sign of the stored permutation.
inline int det_commutation(Index p, Index q) { return build_commutation(p, q).determinant(); }

/// Tr K_{p,p}.
inline Index trace_commutation(Index p) { return build_commutation(p, p).trace(); }

/// K_{p,q} (B kron A) K_{q,p}, which reproduces A kron B for A (p x p), B (q x q).
template <typename DA, typename DB>
Matrix<typename DA::Scalar> conjugate_kron(const Eigen::MatrixBase<DA>& A,
                                           const Eigen::MatrixBase<DB>& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols())
    throw DimensionError("conjugate_kron needs square factors");
  return build_commutation(A.rows(), B.rows()).conjugate(kron(B, A));
}

}  // namespace commutant

#endif  // COMMUTANT_COMMUTATION_MATRIX_HPP
