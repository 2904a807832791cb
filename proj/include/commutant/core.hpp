#ifndef COMMUTANT_CORE_HPP
#define COMMUTANT_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace commutant {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A mode index lies outside 1..order.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A size parameter is out of its admissible range (e.g. non-positive).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An index lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the mathematical domain of the operation
/// (zero factor vector, negative entry where nonnegativity is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be invertible has a pivot below threshold.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A tensor expected to be rank-1 is not.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A tensor expected to be symmetric is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition relating several inputs does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, matrix text).
class ParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
  if (!condition) throw DimensionError(what);
}

}  // namespace detail

}  // namespace commutant

#endif  // COMMUTANT_CORE_HPP
