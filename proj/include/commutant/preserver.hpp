#ifndef COMMUTANT_PRESERVER_HPP
#define COMMUTANT_PRESERVER_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "commutant/commutation_tensor.hpp"
#include "commutant/core.hpp"
#include "commutant/cp_rank.hpp"
#include "commutant/linalg.hpp"
#include "commutant/permutation.hpp"
#include "commutant/random.hpp"
#include "commutant/tensor.hpp"

namespace commutant {

namespace detail {

template <typename Scalar>
void require_invertible(const Matrix<Scalar>& M, Index n, const char* what) {
  if (M.rows() != n || M.cols() != n)
    throw DimensionError(std::string(what) + ": matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  if (!is_invertible(M))
    throw SingularityError(std::string(what) + ": matrix is singular");
}

}  // namespace detail

/// Rank preserver phi(A) = B x (A x K^tau) on order-m, dimension-n tensors,
/// with B = B_1 x ... x B_m. On a rank-1 tensor a_1 x ... x a_m the image is
/// (B_1 a_{tau(1)}) x ... x (B_m a_{tau(m)}).
template <typename Scalar = double>
class RankPreserver {
 public:
  RankPreserver(std::vector<Matrix<Scalar>> matrices, Permutation tau)
      : matrices_(std::move(matrices)), tau_(std::move(tau)) {
    if (matrices_.empty()) throw ArgumentError("a rank preserver needs at least one matrix");
    if (tau_.size() != static_cast<Index>(matrices_.size()))
      throw DimensionError("rank preserver: tau acts on " + std::to_string(tau_.size()) +
                           " slots but " + std::to_string(matrices_.size()) +
                           " matrices were given");
    const Index n = matrices_.front().rows();
    for (const auto& B : matrices_) detail::require_invertible(B, n, "rank preserver");
  }

  Index m() const { return static_cast<Index>(matrices_.size()); }
  Index n() const { return matrices_.front().rows(); }
  const std::vector<Matrix<Scalar>>& matrices() const { return matrices_; }
  const Permutation& tau() const { return tau_; }
  Gct<Scalar> tensor() const { return Gct<Scalar>(matrices_); }

 private:
  std::vector<Matrix<Scalar>> matrices_;
  Permutation tau_;
};

/// Applies phi through mode products: A x K^tau is the index shuffle
/// permute_modes(A, tau^{-1}), and B x Y is Y x_1 B_1 x_2 ... x_m B_m.
template <typename Scalar>
DenseTensor<Scalar> apply_rank_preserver(const RankPreserver<Scalar>& phi,
                                         const DenseTensor<Scalar>& A) {
  if (A.shape() != Shape::cubical(phi.m(), phi.n()))
    throw DimensionError("apply_rank_preserver: tensor shape " + A.shape().to_string() +
                         " does not match " + Shape::cubical(phi.m(), phi.n()).to_string());
  DenseTensor<Scalar> out = permute_modes(A, phi.tau().inverse());
  for (Index k = 0; k < phi.m(); ++k)
    out = mode_n_product(out, phi.matrices()[static_cast<std::size_t>(k)], k);
  return out;
}

/// outer o inner: matrices C_k = outer.B_k * inner.B_{outer.tau(k)}, tau = inner.tau o outer.tau.
template <typename Scalar>
RankPreserver<Scalar> compose(const RankPreserver<Scalar>& outer,
                              const RankPreserver<Scalar>& inner) {
  if (outer.m() != inner.m() || outer.n() != inner.n())
    throw DimensionError("compose: preservers act on different spaces");
  std::vector<Matrix<Scalar>> mats;
  for (Index k = 0; k < outer.m(); ++k)
    mats.push_back(outer.matrices()[static_cast<std::size_t>(k)] *
                   inner.matrices()[static_cast<std::size_t>(outer.tau()(k))]);
  return RankPreserver<Scalar>(std::move(mats), inner.tau() * outer.tau());
}

/// phi(X) = [[B]] . X on symmetric order-m tensors.
template <typename Scalar = double>
class SymPreserver {
 public:
  enum class Nonnegativity { Ignore, Require };

  SymPreserver(Matrix<Scalar> B, Index m, Nonnegativity check = Nonnegativity::Ignore)
      : B_(std::move(B)), m_(m) {
    if (m < 1) throw ArgumentError("SymPreserver needs m >= 1");
    detail::require_invertible(B_, B_.rows(), "symmetric preserver");
    if (check == Nonnegativity::Require && B_.minCoeff() < 0)
      throw DomainError("symmetric preserver: matrix has a negative entry");
  }

  Index n() const { return B_.rows(); }
  Index m() const { return m_; }
  const Matrix<Scalar>& matrix() const { return B_; }
  bool is_nonnegative() const { return B_.minCoeff() >= 0; }

 private:
  Matrix<Scalar> B_;
  Index m_;
};

/// complete_right_product(X, B); for m = 2 this is B X B^T.
template <typename Scalar>
DenseTensor<Scalar> apply_sym_preserver(const SymPreserver<Scalar>& phi,
                                        const DenseTensor<Scalar>& X) {
  if (X.shape() != Shape::cubical(phi.m(), phi.n()))
    throw DimensionError("apply_sym_preserver: tensor shape " + X.shape().to_string() +
                         " does not match " + Shape::cubical(phi.m(), phi.n()).to_string());
  return complete_right_product(X, phi.matrix());
}

/// T(A) = P A Q, or P A^T Q when transposed.
template <typename Scalar = double>
class MatrixPreserver {
 public:
  MatrixPreserver(Matrix<Scalar> P, Matrix<Scalar> Q, bool transposed)
      : P_(std::move(P)), Q_(std::move(Q)), transposed_(transposed) {
    detail::require_invertible(P_, P_.rows(), "matrix preserver P");
    detail::require_invertible(Q_, P_.rows(), "matrix preserver Q");
  }

  Index n() const { return P_.rows(); }
  const Matrix<Scalar>& P() const { return P_; }
  const Matrix<Scalar>& Q() const { return Q_; }
  bool transposed() const { return transposed_; }

 private:
  Matrix<Scalar> P_;
  Matrix<Scalar> Q_;
  bool transposed_;
};

template <typename Scalar>
Matrix<Scalar> apply_matrix_preserver(const MatrixPreserver<Scalar>& phi, const Matrix<Scalar>& A) {
  if (A.rows() != phi.n() || A.cols() != phi.n())
    throw DimensionError("apply_matrix_preserver: operand must be " + std::to_string(phi.n()) +
                         "x" + std::to_string(phi.n()));
  return phi.transposed() ? Matrix<Scalar>(phi.P() * A.transpose() * phi.Q())
                          : Matrix<Scalar>(phi.P() * A * phi.Q());
}

/// Unified form X x_1 B1 x_2 B2, optionally after the m = 2 mode swap.
/// Under this library's mode-product orientation it equals B1 X B2^T.
template <typename Scalar>
Matrix<Scalar> apply_unified(const Matrix<Scalar>& B1, const Matrix<Scalar>& B2,
                             const Matrix<Scalar>& X, bool swap_modes) {
  auto T = DenseTensor<Scalar>::from_matrix(X);
  if (swap_modes) T = permute_modes(T, Permutation::swap(2, 0, 1));
  return mode_n_product(mode_n_product(T, B1, 0), B2, 1).to_matrix();
}

/// The order-2 rank preserver realising the same map: B_1 = P, B_2 = Q^T,
/// tau = (1 2) for the transposed branch.
template <typename Scalar>
RankPreserver<Scalar> to_rank_preserver(const MatrixPreserver<Scalar>& phi) {
  return RankPreserver<Scalar>({phi.P(), phi.Q().transpose()},
                               phi.transposed() ? Permutation::swap(2, 0, 1)
                                                : Permutation::identity(2));
}

/// |det(P Q) - 1| <= tol.
template <typename Scalar>
bool is_determinant_preserver(const MatrixPreserver<Scalar>& phi, double tol = 1e-9) {
  return std::abs(determinant(Matrix<Scalar>(phi.P() * phi.Q())) - Scalar(1)) <= tol;
}

/// Order-m identity tensor: 1 exactly where all indices coincide.
template <typename Scalar = double>
DenseTensor<Scalar> identity_tensor(Index m, Index n) {
  if (m < 1 || n < 1) throw ArgumentError("identity_tensor needs m, n >= 1");
  return DenseTensor<Scalar>::from_function(Shape::cubical(m, n), [](std::span<const Index> ix) {
    for (Index v : ix)
      if (v != ix[0]) return Scalar(0);
    return Scalar(1);
  });
}

template <typename Scalar>
bool fixes_identity(const SymPreserver<Scalar>& phi, double tol = 1e-12) {
  const auto I = identity_tensor<Scalar>(phi.m(), phi.n());
  return max_abs_diff(apply_sym_preserver(phi, I), I) <= tol;
}

struct RankPreservationReport {
  Index trials = 0;
  Index passed = 0;
  std::vector<Index> failures;  // trial indices
};

/// Relative tolerance for certifying a rank-1 image.
inline constexpr double kRank1Certificate = 1e-9;

/// Draws `trials` random rank-1 tensors (trial t uses stream (seed, 0, t)),
/// applies phi and certifies each image is rank one: matrix_rank for m = 2,
/// vanishing unfolding minors otherwise.
inline RankPreservationReport verify_rank_preservation(const RankPreserver<double>& phi,
                                                       Index trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("verify_rank_preservation needs trials >= 1");
  RankPreservationReport report;
  report.trials = trials;
  for (Index t = 0; t < trials; ++t) {
    Rng rng(seed, 0, static_cast<std::uint64_t>(t));
    std::vector<VectorXd> factors;
    for (Index k = 0; k < phi.m(); ++k) factors.push_back(rng.vector(phi.n()));
    const Tensor image = apply_rank_preserver(phi, rank1(factors));
    bool ok = false;
    if (phi.m() == 2) {
      const double peak = image.values().cwiseAbs().maxCoeff();
      ok = peak > 0 && matrix_rank(image.to_matrix(), kRank1Certificate * peak) == 1;
    } else {
      ok = is_rank1(image, kRank1Certificate);
    }
    if (ok)
      ++report.passed;
    else
      report.failures.push_back(t);
  }
  return report;
}

}  // namespace commutant

#endif  // COMMUTANT_PRESERVER_HPP
