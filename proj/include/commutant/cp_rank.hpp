#ifndef COMMUTANT_CP_RANK_HPP
#define COMMUTANT_CP_RANK_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "commutant/commutation_tensor.hpp"
#include "commutant/core.hpp"
#include "commutant/linalg.hpp"
#include "commutant/permutation.hpp"
#include "commutant/tensor.hpp"

namespace commutant {

/// Outer product v_1 x v_2 x ... x v_m; entry (i) = prod_k v_k(i_k).
template <typename Scalar>
DenseTensor<Scalar> rank1(const std::vector<Vector<Scalar>>& vectors) {
  if (vectors.empty()) throw ArgumentError("rank1 needs at least one vector");
  std::vector<Index> dims;
  for (const auto& v : vectors) {
    if (v.size() == 0 || v.isZero(0))
      throw DomainError("rank1: factor vectors must be nonzero");
    dims.push_back(v.size());
  }
  return DenseTensor<Scalar>::from_function(Shape(dims), [&](std::span<const Index> ix) {
    Scalar p(1);
    for (std::size_t k = 0; k < vectors.size(); ++k) p *= vectors[k](ix[k]);
    return p;
  });
}

/// x^m = x x x x ... x x (m factors).
template <typename Scalar>
DenseTensor<Scalar> sym_power(const Vector<Scalar>& x, Index m) {
  if (m < 1) throw ArgumentError("sym_power needs m >= 1");
  return rank1(std::vector<Vector<Scalar>>(static_cast<std::size_t>(m), x));
}

/// Rank-R CP representation: m factor matrices of shape n x R; column r of
/// factor k is the k-th vector of the r-th rank-1 term.
template <typename Scalar = double>
class CpForm {
 public:
  explicit CpForm(std::vector<Matrix<Scalar>> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ArgumentError("a CP form needs at least one factor");
    const Index n = factors_.front().rows();
    const Index R = factors_.front().cols();
    if (n < 1 || R < 1) throw ArgumentError("a CP form needs n, R >= 1");
    for (const auto& f : factors_) {
      if (f.rows() != n || f.cols() != R)
        throw DimensionError("CP factors must all be " + std::to_string(n) + "x" +
                             std::to_string(R));
      for (Index r = 0; r < R; ++r)
        if (f.col(r).isZero(0)) throw DomainError("CP factor columns must be nonzero");
    }
  }

  Index m() const { return static_cast<Index>(factors_.size()); }
  Index n() const { return factors_.front().rows(); }
  Index rank() const { return factors_.front().cols(); }
  const std::vector<Matrix<Scalar>>& factors() const { return factors_; }

  friend bool operator==(const CpForm&, const CpForm&) = default;

 private:
  std::vector<Matrix<Scalar>> factors_;
};

/// Sum over r of the rank-1 terms; entry (i) = sum_r prod_k factor_k(i_k, r).
template <typename Scalar>
DenseTensor<Scalar> materialize(const CpForm<Scalar>& cp) {
  const auto& F = cp.factors();
  return DenseTensor<Scalar>::from_function(
      Shape::cubical(cp.m(), cp.n()), [&](std::span<const Index> ix) {
        Scalar total(0);
        for (Index r = 0; r < cp.rank(); ++r) {
          Scalar p(1);
          for (std::size_t k = 0; k < F.size(); ++k) p *= F[k](ix[k], r);
          total += p;
        }
        return total;
      });
}

/// Reorders factors so that materialize(result) == permute_modes(materialize(cp), sigma):
/// slot s of the result holds the factor from slot sigma^{-1}(s).
template <typename Scalar>
CpForm<Scalar> permute_cp_factors(const CpForm<Scalar>& cp, const Permutation& sigma) {
  if (sigma.size() != cp.m())
    throw DimensionError("permute_cp_factors: permutation size does not match order");
  const Permutation inv = sigma.inverse();
  std::vector<Matrix<Scalar>> out;
  out.reserve(cp.factors().size());
  for (Index s = 0; s < cp.m(); ++s) out.push_back(cp.factors()[static_cast<std::size_t>(inv(s))]);
  return CpForm<Scalar>(std::move(out));
}

/// Symmetric CP form sum_r w_r v_r^m.
template <typename Scalar = double>
class SymCpForm {
 public:
  SymCpForm(Index m, std::vector<Vector<Scalar>> vectors, std::vector<Scalar> weights)
      : m_(m), vectors_(std::move(vectors)), weights_(std::move(weights)) {
    if (m < 1) throw ArgumentError("SymCpForm needs m >= 1");
    if (vectors_.empty() || vectors_.size() != weights_.size())
      throw DimensionError("SymCpForm needs one weight per vector");
    for (const auto& v : vectors_) {
      if (v.size() != vectors_.front().size())
        throw DimensionError("SymCpForm vectors must share a dimension");
      if (v.isZero(0)) throw DomainError("SymCpForm vectors must be nonzero");
    }
  }

  Index m() const { return m_; }
  Index n() const { return vectors_.front().size(); }
  Index rank() const { return static_cast<Index>(vectors_.size()); }
  const std::vector<Vector<Scalar>>& vectors() const { return vectors_; }
  const std::vector<Scalar>& weights() const { return weights_; }

 private:
  Index m_;
  std::vector<Vector<Scalar>> vectors_;
  std::vector<Scalar> weights_;
};

template <typename Scalar>
DenseTensor<Scalar> materialize(const SymCpForm<Scalar>& cp) {
  DenseTensor<Scalar> total = DenseTensor<Scalar>::zeros(Shape::cubical(cp.m(), cp.n()));
  for (Index r = 0; r < cp.rank(); ++r)
    total = total + sym_power(cp.vectors()[static_cast<std::size_t>(r)], cp.m()) *
                        cp.weights()[static_cast<std::size_t>(r)];
  return total;
}

/// Mode-k unfolding: rows indexed by i_k, columns by the remaining indices in
/// canonical order.
template <typename Scalar>
Matrix<Scalar> mode_unfold(const DenseTensor<Scalar>& A, Index k) {
  if (k < 0 || k >= A.order()) throw ModeError("mode_unfold: mode out of range");
  const Index rows = A.shape().extent(k);
  Matrix<Scalar> U(rows, A.size() / rows);
  Index left = 1;
  for (Index j = 0; j < k; ++j) left *= A.shape().extent(j);
  for (Index flat = 0; flat < A.size(); ++flat) {
    const Index lo = flat % left;
    const Index ik = (flat / left) % rows;
    const Index hi = flat / (left * rows);
    U(ik, lo + hi * left) = A.values()(flat);
  }
  return U;
}

/// True iff every 2x2 minor of M is at most tol in magnitude.
template <typename Derived>
bool minors_vanish(const Eigen::MatrixBase<Derived>& M, double tol) {
  for (Index a = 0; a < M.rows(); ++a)
    for (Index b = a + 1; b < M.rows(); ++b)
      for (Index c = 0; c < M.cols(); ++c)
        for (Index d = c + 1; d < M.cols(); ++d)
          if (std::abs(M(a, c) * M(b, d) - M(a, d) * M(b, c)) > tol) return false;
  return true;
}

/// Rank-1 certificate: the tensor is nonzero and every mode unfolding has
/// vanishing 2x2 minors relative to the squared largest entry.
template <typename Scalar>
bool is_rank1(const DenseTensor<Scalar>& A, double rel_tol = 1e-9) {
  const Scalar peak = A.values().cwiseAbs().maxCoeff();
  if (!(peak > 0)) return false;
  const double tol = rel_tol * static_cast<double>(peak * peak);
  for (Index k = 0; k < A.order(); ++k)
    if (!minors_vanish(mode_unfold(A, k), tol)) return false;
  return true;
}

/// True iff A is invariant under every mode permutation, up to tol.
/// Adjacent transpositions generate S_m, so only those are checked.
template <typename Scalar>
bool is_symmetric(const DenseTensor<Scalar>& A, double tol = 0.0) {
  if (!A.shape().is_cubical()) return false;
  for (Index k = 0; k + 1 < A.order(); ++k)
    if (max_abs_diff(permute_modes(A, Permutation::swap(A.order(), k, k + 1)), A) > tol)
      return false;
  return true;
}

template <typename Scalar>
struct SymRank1 {
  Scalar lambda;
  Vector<Scalar> y;
};

/// Threshold on mode-1 unfolding minors used to certify rank one.
inline constexpr double kRank1Minor = 1e-10;

/// Writes a symmetric rank-1 tensor as lambda * y^m with ||y|| = 1.
///
/// For even m, y's first nonzero coordinate is positive and lambda carries the
/// sign. For odd m, lambda >= 0 and y absorbs the sign.
/// Throws SymmetryError or RankError when the input does not qualify.
template <typename Scalar>
SymRank1<Scalar> extract_sym_rank1(const DenseTensor<Scalar>& T) {
  if (!T.shape().is_cubical()) throw SymmetryError("extract_sym_rank1: extents differ");
  const Scalar peak = T.values().cwiseAbs().maxCoeff();
  if (!(peak > 0)) throw RankError("extract_sym_rank1: zero tensor has rank 0");
  const double scale = std::max(1.0, static_cast<double>(peak * peak));
  if (!is_symmetric(T, kRank1Minor * std::max(1.0, static_cast<double>(peak))))
    throw SymmetryError("extract_sym_rank1: tensor is not symmetric");
  const Matrix<Scalar> U = mode_unfold(T, 0);
  if (!minors_vanish(U, kRank1Minor * scale))
    throw RankError("extract_sym_rank1: tensor is not rank one");

  Index best = 0;
  U.colwise().norm().maxCoeff(&best);
  Vector<Scalar> y = U.col(best).normalized();
  for (Index i = 0; i < y.size(); ++i) {
    if (std::abs(y(i)) > 1e-12) {
      if (y(i) < 0) y = -y;
      break;
    }
  }
  Scalar lambda = T.values().dot(sym_power(y, T.order()).values());
  if (T.order() % 2 == 1 && lambda < 0) {
    lambda = -lambda;
    y = -y;
  }
  return {lambda, y};
}

}  // namespace commutant

#endif  // COMMUTANT_CP_RANK_HPP
