#ifndef COMMUTANT_TENSOR_HPP
#define COMMUTANT_TENSOR_HPP

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "commutant/core.hpp"

namespace commutant {

/// Extents of a dense tensor, one per mode.
class Shape {
 public:
  Shape() = default;

  explicit Shape(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("a shape needs at least one mode");
    for (Index d : dims_)
      if (d < 1) throw DimensionError("every extent must be at least 1");
  }

  Shape(std::initializer_list<Index> dims) : Shape(std::vector<Index>(dims)) {}

  /// n x n x ... x n with `order` modes.
  static Shape cubical(Index order, Index n) {
    return Shape(std::vector<Index>(static_cast<std::size_t>(order), n));
  }

  Index order() const { return static_cast<Index>(dims_.size()); }
  Index extent(Index mode) const { return dims_[static_cast<std::size_t>(mode)]; }
  const std::vector<Index>& dims() const { return dims_; }

  Index size() const {
    Index total = 1;
    for (Index d : dims_) total *= d;
    return total;
  }

  bool is_cubical() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](Index d) { return d == dims_.front(); });
  }

  /// Flat offset in the canonical layout: mode 0 varies fastest.
  Index offset(std::span<const Index> index) const {
    Index off = 0;
    Index stride = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      off += index[k] * stride;
      stride *= dims_[k];
    }
    return off;
  }

  /// Inverse of offset().
  std::vector<Index> unravel(Index flat) const {
    std::vector<Index> index(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      index[k] = flat % dims_[k];
      flat /= dims_[k];
    }
    return index;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (k) s += 'x';
      s += std::to_string(dims_[k]);
    }
    return s;
  }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<Index> dims_;
};

/// Advances a 0-based multi-index in canonical order. Returns false after the last one.
inline bool next_index(std::vector<Index>& index, const Shape& shape) {
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (++index[k] < shape.extent(static_cast<Index>(k))) return true;
    index[k] = 0;
  }
  return false;
}

/// Dense real tensor of arbitrary order. Values are immutable after construction.
///
/// Storage is the little-endian mixed-radix layout (mode 0 fastest), so an
/// order-2 tensor shares its layout with a column-major matrix and the balance
/// unfolding of an order-2m tensor is a reinterpretation of the same buffer.
/// Multi-indices are 0-based.
template <typename Scalar>
class DenseTensor {
 public:
  using scalar_type = Scalar;

  DenseTensor() = default;

  DenseTensor(Shape shape, Vector<Scalar> values)
      : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != shape_.size())
      throw DimensionError("tensor of shape " + shape_.to_string() + " needs " +
                           std::to_string(shape_.size()) + " values, got " +
                           std::to_string(values_.size()));
  }

  static DenseTensor zeros(const Shape& shape) {
    return DenseTensor(shape, Vector<Scalar>::Zero(shape.size()));
  }

  static DenseTensor constant(const Shape& shape, Scalar value) {
    return DenseTensor(shape, Vector<Scalar>::Constant(shape.size(), value));
  }

  /// Builds a tensor by evaluating f at every multi-index.
  template <typename F>
  static DenseTensor from_function(const Shape& shape, F&& f) {
    Vector<Scalar> values(shape.size());
    std::vector<Index> index(static_cast<std::size_t>(shape.order()), 0);
    Index flat = 0;
    do {
      values[flat++] = f(std::span<const Index>(index));
    } while (next_index(index, shape));
    return DenseTensor(shape, std::move(values));
  }

  /// Order-2 tensor with the same entries as M.
  template <typename Derived>
  static DenseTensor from_matrix(const Eigen::MatrixBase<Derived>& M) {
    Matrix<Scalar> colmajor = M;
    return DenseTensor(Shape{colmajor.rows(), colmajor.cols()},
                       Eigen::Map<const Vector<Scalar>>(colmajor.data(), colmajor.size()));
  }

  const Shape& shape() const { return shape_; }
  Index order() const { return shape_.order(); }
  Index size() const { return values_.size(); }
  const Vector<Scalar>& values() const { return values_; }

  Scalar at(std::span<const Index> index) const { return values_[shape_.offset(index)]; }
  Scalar at(std::initializer_list<Index> index) const {
    return at(std::span<const Index>(index.begin(), index.size()));
  }

  /// Matrix view of an order-2 tensor.
  Matrix<Scalar> to_matrix() const {
    if (order() != 2) throw DimensionError("to_matrix needs an order-2 tensor");
    return Eigen::Map<const Matrix<Scalar>>(values_.data(), shape_.extent(0), shape_.extent(1));
  }

  /// Copy with a single entry replaced.
  DenseTensor with_entry(std::span<const Index> index, Scalar value) const {
    Vector<Scalar> v = values_;
    v[shape_.offset(index)] = value;
    return DenseTensor(shape_, std::move(v));
  }

  DenseTensor operator+(const DenseTensor& other) const {
    if (shape_ != other.shape_) throw DimensionError("adding tensors of different shape");
    return DenseTensor(shape_, values_ + other.values_);
  }

  DenseTensor operator-(const DenseTensor& other) const {
    if (shape_ != other.shape_) throw DimensionError("subtracting tensors of different shape");
    return DenseTensor(shape_, values_ - other.values_);
  }

  DenseTensor operator*(Scalar s) const { return DenseTensor(shape_, values_ * s); }
  friend DenseTensor operator*(Scalar s, const DenseTensor& t) { return t * s; }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.shape_ == b.shape_ && a.values_ == b.values_;
  }

 private:
  Shape shape_;
  Vector<Scalar> values_;
};

using Tensor = DenseTensor<double>;

/// Largest entrywise absolute difference; shapes must agree.
template <typename Scalar>
Scalar max_abs_diff(const DenseTensor<Scalar>& a, const DenseTensor<Scalar>& b) {
  if (a.shape() != b.shape()) throw DimensionError("comparing tensors of different shape");
  if (a.size() == 0) return Scalar(0);
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool approx_equal(const DenseTensor<Scalar>& a, const DenseTensor<Scalar>& b, double tol) {
  return a.shape() == b.shape() && max_abs_diff(a, b) <= tol;
}

/// Mode-k product A x_k M with result entry sum_j M(i_k, j) * A(..., j, ...).
/// The mode index k is 0-based; M must have as many columns as A has extent in mode k.
template <typename Scalar>
DenseTensor<Scalar> mode_n_product(const DenseTensor<Scalar>& A, const Matrix<Scalar>& M,
                                   Index k) {
  if (k < 0 || k >= A.order())
    throw ModeError("mode " + std::to_string(k) + " out of range for order " +
                    std::to_string(A.order()));
  const Index nk = A.shape().extent(k);
  if (M.cols() != nk)
    throw DimensionError("mode product: matrix has " + std::to_string(M.cols()) +
                         " columns, mode extent is " + std::to_string(nk));
  Index left = 1;
  for (Index j = 0; j < k; ++j) left *= A.shape().extent(j);
  const Index right = A.size() / (left * nk);

  std::vector<Index> dims = A.shape().dims();
  dims[static_cast<std::size_t>(k)] = M.rows();
  Shape out_shape(std::move(dims));
  Vector<Scalar> out(out_shape.size());

  // Each right-slab is a (left x nk) column-major block; multiply by M^T on the right.
  const Matrix<Scalar> Mt = M.transpose();
  for (Index r = 0; r < right; ++r) {
    Eigen::Map<const Matrix<Scalar>> in(A.values().data() + r * left * nk, left, nk);
    Eigen::Map<Matrix<Scalar>> dst(out.data() + r * left * M.rows(), left, M.rows());
    dst.noalias() = in * Mt;
  }
  return DenseTensor<Scalar>(std::move(out_shape), std::move(out));
}

/// A x_{3,4} B for an m x n x p x q tensor A and p x q matrix B:
/// entry (i, j) = sum_{k,l} A(i,j,k,l) B(k,l).
template <typename Scalar>
Matrix<Scalar> contract_34(const DenseTensor<Scalar>& A, const Matrix<Scalar>& B) {
  if (A.order() != 4) throw DimensionError("contract_34 needs an order-4 tensor");
  const auto& s = A.shape();
  if (s.extent(2) != B.rows() || s.extent(3) != B.cols())
    throw DimensionError("contract_34: trailing modes " + std::to_string(s.extent(2)) + "x" +
                         std::to_string(s.extent(3)) + " do not match operand " +
                         std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
  const Index mn = s.extent(0) * s.extent(1);
  Eigen::Map<const Matrix<Scalar>> lhs(A.values().data(), mn, B.size());
  Eigen::Map<const Vector<Scalar>> rhs(B.data(), B.size());
  Vector<Scalar> flat = lhs * rhs;
  return Eigen::Map<const Matrix<Scalar>>(flat.data(), s.extent(0), s.extent(1));
}

namespace detail {

/// Half-order m and dimension n of a cubical tensor of even order.
template <typename Scalar>
std::pair<Index, Index> even_cubical(const DenseTensor<Scalar>& A, const char* what) {
  if (A.order() % 2 != 0)
    throw DimensionError(std::string(what) + ": order " + std::to_string(A.order()) +
                         " is odd");
  if (!A.shape().is_cubical())
    throw DimensionError(std::string(what) + ": extents " + A.shape().to_string() +
                         " are not all equal");
  return {A.order() / 2, A.shape().extent(0)};
}

inline Index ipow(Index base, Index exp) {
  Index r = 1;
  for (Index i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Balance unfolding of an order-2m tensor with all extents n into an
/// n^m x n^m matrix: the first m modes index rows, the last m index columns,
/// each flattened little-endian.
template <typename Scalar>
Matrix<Scalar> balance_unfold(const DenseTensor<Scalar>& A) {
  const auto [m, n] = detail::even_cubical(A, "balance_unfold");
  const Index N = detail::ipow(n, m);
  return Eigen::Map<const Matrix<Scalar>>(A.values().data(), N, N);
}

/// Inverse of balance_unfold for half-order m and dimension n.
template <typename Derived>
DenseTensor<typename Derived::Scalar> refold(const Eigen::MatrixBase<Derived>& M, Index m,
                                             Index n) {
  using Scalar = typename Derived::Scalar;
  if (m < 1 || n < 1) throw ArgumentError("refold: m and n must be positive");
  const Index N = detail::ipow(n, m);
  if (M.rows() != N || M.cols() != N)
    throw DimensionError("refold: expected a " + std::to_string(N) + "x" + std::to_string(N) +
                         " matrix");
  Matrix<Scalar> colmajor = M;
  return DenseTensor<Scalar>(Shape::cubical(2 * m, n),
                             Eigen::Map<const Vector<Scalar>>(colmajor.data(), colmajor.size()));
}

/// Product of two order-2m tensors: contraction of the last m modes of A
/// with the first m modes of B.
template <typename Scalar>
DenseTensor<Scalar> mul_2m(const DenseTensor<Scalar>& A, const DenseTensor<Scalar>& B) {
  const auto [m, n] = detail::even_cubical(A, "mul_2m");
  if (A.shape() != B.shape())
    throw DimensionError("mul_2m: shapes " + A.shape().to_string() + " and " +
                         B.shape().to_string() + " differ");
  const Index N = detail::ipow(n, m);
  Eigen::Map<const Matrix<Scalar>> a(A.values().data(), N, N);
  Eigen::Map<const Matrix<Scalar>> b(B.values().data(), N, N);
  Matrix<Scalar> c = a * b;
  return DenseTensor<Scalar>(A.shape(), Eigen::Map<const Vector<Scalar>>(c.data(), c.size()));
}

/// Left action of an order-2m tensor on an order-m tensor:
/// entry (i) = sum_k A(i; k) X(k).
template <typename Scalar>
DenseTensor<Scalar> mul_2m_on_m(const DenseTensor<Scalar>& A, const DenseTensor<Scalar>& X) {
  const auto [m, n] = detail::even_cubical(A, "mul_2m_on_m");
  if (X.shape() != Shape::cubical(m, n))
    throw DimensionError("mul_2m_on_m: operand shape " + X.shape().to_string() +
                         " does not match " + Shape::cubical(m, n).to_string());
  const Index N = detail::ipow(n, m);
  Eigen::Map<const Matrix<Scalar>> a(A.values().data(), N, N);
  return DenseTensor<Scalar>(X.shape(), a * X.values());
}

/// Right action of an order-2m tensor on an order-m tensor:
/// entry (j) = sum_k X(k) A(k; j).
template <typename Scalar>
DenseTensor<Scalar> mul_m_by_2m(const DenseTensor<Scalar>& X, const DenseTensor<Scalar>& A) {
  const auto [m, n] = detail::even_cubical(A, "mul_m_by_2m");
  if (X.shape() != Shape::cubical(m, n))
    throw DimensionError("mul_m_by_2m: operand shape " + X.shape().to_string() +
                         " does not match " + Shape::cubical(m, n).to_string());
  const Index N = detail::ipow(n, m);
  Eigen::Map<const Matrix<Scalar>> a(A.values().data(), N, N);
  return DenseTensor<Scalar>(X.shape(), a.transpose() * X.values());
}

}  // namespace commutant

#endif  // COMMUTANT_TENSOR_HPP
