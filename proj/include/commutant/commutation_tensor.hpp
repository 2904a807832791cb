#ifndef COMMUTANT_COMMUTATION_TENSOR_HPP
#define COMMUTANT_COMMUTATION_TENSOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "commutant/core.hpp"
#include "commutant/linalg.hpp"
#include "commutant/permutation.hpp"
#include "commutant/tensor.hpp"

namespace commutant {

/// Fourth-order commutation tensor of shape n x m x m x n with entry
/// (i, j, k, l) equal to 1 iff i == l and j == k. Contracting its last two
/// modes with an m x n matrix X yields X^T.
template <typename Scalar = double>
class CommutationTensor4 {
 public:
  CommutationTensor4(Index m, Index n) : m_(m), n_(n) {
    if (m < 1 || n < 1)
      throw ArgumentError("commutation tensor needs m, n >= 1 (got " + std::to_string(m) +
                          ", " + std::to_string(n) + ")");
    backing_ = DenseTensor<Scalar>::from_function(
        Shape{n, m, m, n}, [](std::span<const Index> ix) {
          return (ix[0] == ix[3] && ix[1] == ix[2]) ? Scalar(1) : Scalar(0);
        });
  }

  Index m() const { return m_; }
  Index n() const { return n_; }
  const DenseTensor<Scalar>& backing() const { return backing_; }

 private:
  Index m_;
  Index n_;
  DenseTensor<Scalar> backing_;
};

template <typename Scalar = double>
CommutationTensor4<Scalar> build_ctensor(Index m, Index n) {
  return CommutationTensor4<Scalar>(m, n);
}

/// K x_{3,4} X for an m x n matrix X; equals X^T.
template <typename Scalar>
Matrix<Scalar> tensor_transpose(const CommutationTensor4<Scalar>& K, const Matrix<Scalar>& X) {
  if (X.rows() != K.m() || X.cols() != K.n())
    throw DimensionError("tensor_transpose: operand is " + std::to_string(X.rows()) + "x" +
                         std::to_string(X.cols()) + ", tensor expects " +
                         std::to_string(K.m()) + "x" + std::to_string(K.n()));
  return contract_34(K.backing(), X);
}

/// Generalised commutation tensor B_1 x ... x B_m kept in generator form.
/// Dense entry (i_1..i_m; j_1..j_m) = prod_k B_k(i_k, j_k).
template <typename Scalar = double>
class Gct {
 public:
  explicit Gct(std::vector<Matrix<Scalar>> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw ArgumentError("a GCT needs at least one generator");
    const Index n = generators_.front().rows();
    for (const auto& g : generators_)
      if (g.rows() != n || g.cols() != n)
        throw DimensionError("GCT generators must all be " + std::to_string(n) + "x" +
                             std::to_string(n));
  }

  Index m() const { return static_cast<Index>(generators_.size()); }
  Index n() const { return generators_.front().rows(); }
  const std::vector<Matrix<Scalar>>& generators() const { return generators_; }
  const Matrix<Scalar>& generator(Index k) const {
    return generators_[static_cast<std::size_t>(k)];
  }

  /// Order-2m tensor with n^{2m} entries.
  DenseTensor<Scalar> dense() const {
    const Index mm = m();
    return DenseTensor<Scalar>::from_function(
        Shape::cubical(2 * mm, n()), [&](std::span<const Index> ix) {
          Scalar v(1);
          for (Index k = 0; k < mm; ++k)
            v *= generators_[static_cast<std::size_t>(k)](ix[static_cast<std::size_t>(k)],
                                                           ix[static_cast<std::size_t>(k + mm)]);
          return v;
        });
  }

 private:
  std::vector<Matrix<Scalar>> generators_;
};

template <typename Scalar>
Gct<Scalar> build_gct(std::vector<Matrix<Scalar>> generators) {
  return Gct<Scalar>(std::move(generators));
}

/// K^{id}: m copies of I_n.
template <typename Scalar = double>
Gct<Scalar> identity_gct(Index m, Index n) {
  if (m < 1 || n < 1) throw ArgumentError("identity_gct needs m, n >= 1");
  return Gct<Scalar>(std::vector<Matrix<Scalar>>(static_cast<std::size_t>(m),
                                                 Matrix<Scalar>::Identity(n, n)));
}

/// A^{x m}: m copies of A.
template <typename Scalar>
Gct<Scalar> power_gct(const Matrix<Scalar>& A, Index m) {
  if (m < 1) throw ArgumentError("power_gct needs m >= 1");
  return Gct<Scalar>(std::vector<Matrix<Scalar>>(static_cast<std::size_t>(m), A));
}

/// K^pi for pi in S_n: m copies of the permutation matrix of pi.
template <typename Scalar = double>
Gct<Scalar> permutation_gct(const Permutation& pi, Index m) {
  return power_gct<Scalar>(pi.to_matrix<Scalar>(), m);
}

/// Slotwise product; dense(G * H) == mul_2m(dense(G), dense(H)).
template <typename Scalar>
Gct<Scalar> gct_multiply(const Gct<Scalar>& G, const Gct<Scalar>& H) {
  if (G.m() != H.m() || G.n() != H.n())
    throw DimensionError("gct_multiply: (m, n) = (" + std::to_string(G.m()) + ", " +
                         std::to_string(G.n()) + ") vs (" + std::to_string(H.m()) + ", " +
                         std::to_string(H.n()) + ")");
  std::vector<Matrix<Scalar>> out;
  out.reserve(static_cast<std::size_t>(G.m()));
  for (Index k = 0; k < G.m(); ++k) out.push_back(G.generator(k) * H.generator(k));
  return Gct<Scalar>(std::move(out));
}

/// Slotwise inverse. Throws SingularityError if a generator is singular.
template <typename Scalar>
Gct<Scalar> gct_inverse(const Gct<Scalar>& G) {
  std::vector<Matrix<Scalar>> out;
  out.reserve(static_cast<std::size_t>(G.m()));
  for (const auto& g : G.generators()) out.push_back(inverse(g));
  return Gct<Scalar>(std::move(out));
}

/// K^k for the square commutation tensor K = K_{n,n} under mul_2m.
template <typename Scalar = double>
DenseTensor<Scalar> ctensor_power(Index exponent, Index n) {
  if (exponent < 1) throw ArgumentError("ctensor_power needs an exponent >= 1");
  const DenseTensor<Scalar> K = build_ctensor<Scalar>(n, n).backing();
  DenseTensor<Scalar> power = K;
  for (Index e = 1; e < exponent; ++e) power = mul_2m(power, K);
  return power;
}

/// Order-2m 0/1 tensor with entry 1 iff j_k == i_{tau(k)} for every slot k.
template <typename Scalar = double>
class ModePermTensor {
 public:
  ModePermTensor(Permutation tau, Index n) : tau_(std::move(tau)), n_(n) {
    if (tau_.size() < 1 || n < 1) throw ArgumentError("ModePermTensor needs m, n >= 1");
  }

  Index m() const { return tau_.size(); }
  Index n() const { return n_; }
  const Permutation& tau() const { return tau_; }

  DenseTensor<Scalar> dense() const {
    const Index mm = m();
    return DenseTensor<Scalar>::from_function(
        Shape::cubical(2 * mm, n_), [&](std::span<const Index> ix) {
          for (Index k = 0; k < mm; ++k)
            if (ix[static_cast<std::size_t>(mm + k)] != ix[static_cast<std::size_t>(tau_(k))])
              return Scalar(0);
          return Scalar(1);
        });
  }

 private:
  Permutation tau_;
  Index n_;
};

template <typename Scalar = double>
ModePermTensor<Scalar> build_mode_perm_tensor(const Permutation& tau, Index n) {
  return ModePermTensor<Scalar>(tau, n);
}

/// Index shuffle: result(i_1..i_m) = A(i_{tau(1)}, ..., i_{tau(m)}).
/// Equals mul_2m_on_m(build_mode_perm_tensor(tau, n).dense(), A).
template <typename Scalar>
DenseTensor<Scalar> permute_modes(const DenseTensor<Scalar>& A, const Permutation& tau) {
  if (tau.size() != A.order())
    throw DimensionError("permute_modes: permutation of " + std::to_string(tau.size()) +
                         " points for an order-" + std::to_string(A.order()) + " tensor");
  if (!A.shape().is_cubical())
    throw DimensionError("permute_modes: extents " + A.shape().to_string() + " are not equal");
  std::vector<Index> src(static_cast<std::size_t>(A.order()));
  return DenseTensor<Scalar>::from_function(A.shape(), [&](std::span<const Index> ix) {
    for (Index k = 0; k < A.order(); ++k)
      src[static_cast<std::size_t>(k)] = ix[static_cast<std::size_t>(tau(k))];
    return A.at(src);
  });
}

/// A x_1 B x_2 B ... x_m B. On a rank-1 tensor a_1 x ... x a_m this gives
/// (B a_1) x ... x (B a_m); on a matrix it gives B A B^T.
template <typename Scalar>
DenseTensor<Scalar> complete_right_product(const DenseTensor<Scalar>& A, const Matrix<Scalar>& B) {
  if (!A.shape().is_cubical())
    throw DimensionError("complete_right_product: extents " + A.shape().to_string() +
                         " are not equal");
  if (B.rows() != B.cols() || B.cols() != A.shape().extent(0))
    throw DimensionError("complete_right_product: matrix must be " +
                         std::to_string(A.shape().extent(0)) + "x" +
                         std::to_string(A.shape().extent(0)));
  DenseTensor<Scalar> out = A;
  for (Index k = 0; k < A.order(); ++k) out = mode_n_product(out, B, k);
  return out;
}

/// True iff A(i_tau; j_tau) == A(i; j) for every tau in S_m and all indices,
/// up to tol. Exhaustive for m <= 3, otherwise 1000 seeded (index, tau) samples.
template <typename Scalar>
bool is_pair_symmetric(const DenseTensor<Scalar>& A, double tol = 0.0) {
  const auto [m, n] = detail::even_cubical(A, "is_pair_symmetric");
  std::vector<Index> moved(static_cast<std::size_t>(2 * m));
  auto holds = [&](std::span<const Index> ix, const Permutation& tau) {
    for (Index k = 0; k < m; ++k) {
      moved[static_cast<std::size_t>(k)] = ix[static_cast<std::size_t>(tau(k))];
      moved[static_cast<std::size_t>(m + k)] = ix[static_cast<std::size_t>(m + tau(k))];
    }
    return std::abs(A.at(moved) - A.at(ix)) <= tol;
  };
  if (m <= 3) {
    const auto perms = all_permutations(m);
    std::vector<Index> ix(static_cast<std::size_t>(2 * m), 0);
    do {
      for (const auto& tau : perms)
        if (!holds(ix, tau)) return false;
    } while (next_index(ix, A.shape()));
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::vector<Index> ix(static_cast<std::size_t>(2 * m));
  std::vector<Index> images(static_cast<std::size_t>(m));
  for (int sample = 0; sample < 1000; ++sample) {
    for (auto& v : ix) v = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    std::iota(images.begin(), images.end(), Index{0});
    std::shuffle(images.begin(), images.end(), rng);
    if (!holds(ix, Permutation(images))) return false;
  }
  return true;
}

/// True iff the balance unfolding of A is a permutation matrix.
template <typename Scalar>
bool is_balanced_permutation(const DenseTensor<Scalar>& A) {
  return is_permutation_matrix(balance_unfold(A));
}

/// Outcome of check_nonneg_inverse: for every unfolded row, the column of its
/// unique strictly positive entry.
struct NonnegInverseVerdict {
  bool generalized_permutation = false;
  std::vector<std::pair<Index, Index>> witnesses;
};

/// Positivity threshold for the generalised-permutation check.
inline constexpr double kPositiveEntry = 1e-12;

/// Given entrywise nonnegative order-2m tensors with A B == B A == K^{id}
/// (to tol), checks that the balance unfolding of A is a generalised
/// permutation matrix (exactly one strictly positive entry per row and column).
///
/// Throws DomainError on a negative entry and PreconditionError when A and B
/// are not mutually inverse.
template <typename Scalar>
NonnegInverseVerdict check_nonneg_inverse(const DenseTensor<Scalar>& A,
                                          const DenseTensor<Scalar>& B, double tol = 1e-9) {
  const auto [m, n] = detail::even_cubical(A, "check_nonneg_inverse");
  if (A.shape() != B.shape())
    throw DimensionError("check_nonneg_inverse: shapes " + A.shape().to_string() + " and " +
                         B.shape().to_string() + " differ");
  if (A.values().minCoeff() < 0 || B.values().minCoeff() < 0)
    throw DomainError("check_nonneg_inverse: inputs must be entrywise nonnegative");
  const auto id = identity_gct<Scalar>(m, n).dense();
  if (max_abs_diff(mul_2m(A, B), id) > tol || max_abs_diff(mul_2m(B, A), id) > tol)
    throw PreconditionError("check_nonneg_inverse: tensors are not mutually inverse");

  const Matrix<Scalar> U = balance_unfold(A);
  NonnegInverseVerdict verdict;
  verdict.generalized_permutation = true;
  std::vector<Index> col_count(static_cast<std::size_t>(U.cols()), 0);
  for (Index i = 0; i < U.rows(); ++i) {
    Index positives = 0;
    for (Index j = 0; j < U.cols(); ++j) {
      if (U(i, j) > kPositiveEntry) {
        ++positives;
        ++col_count[static_cast<std::size_t>(j)];
        verdict.witnesses.emplace_back(i, j);
      }
    }
    if (positives != 1) verdict.generalized_permutation = false;
  }
  for (Index c : col_count)
    if (c != 1) verdict.generalized_permutation = false;
  return verdict;
}

}  // namespace commutant

#endif  // COMMUTANT_COMMUTATION_TENSOR_HPP
