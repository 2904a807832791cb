#ifndef COMMUTANT_RANDOM_HPP
#define COMMUTANT_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "commutant/core.hpp"
#include "commutant/linalg.hpp"
#include "commutant/permutation.hpp"
#include "commutant/tensor.hpp"

namespace commutant {

/// SplitMix64 finaliser.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream-split rule: seed, then suite index, then trial index, each folded
/// through SplitMix64.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ suite) ^ trial);
}

/// Seeded source of test data. Wraps std::mt19937_64, whose output sequence
/// is fixed by the standard; doubles are built from the top 53 bits so draws
/// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t suite, std::uint64_t trial)
      : engine_(derive_seed(seed, suite, trial)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Index below(Index bound) {
    return static_cast<Index>(next() % static_cast<std::uint64_t>(bound));
  }

  MatrixXd matrix(Index rows, Index cols) {
    MatrixXd M(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) M(i, j) = uniform(-1.0, 1.0);
    return M;
  }

  /// Vector with entries in [-1, 1) and norm at least 0.1.
  VectorXd vector(Index n) {
    for (;;) {
      VectorXd v(n);
      for (Index i = 0; i < n; ++i) v(i) = uniform(-1.0, 1.0);
      if (v.norm() >= 0.1) return v;
    }
  }

  /// Square matrix with |det| >= 0.1, redrawn until it qualifies.
  MatrixXd invertible(Index n) {
    for (;;) {
      MatrixXd M = matrix(n, n);
      if (std::abs(determinant(M)) >= 0.1) return M;
    }
  }

  Tensor tensor(const Shape& shape) {
    VectorXd v(shape.size());
    for (Index i = 0; i < v.size(); ++i) v(i) = uniform(-1.0, 1.0);
    return Tensor(shape, std::move(v));
  }

  /// Uniform permutation via Fisher-Yates.
  Permutation permutation(Index k) {
    std::vector<Index> images(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) images[static_cast<std::size_t>(i)] = i;
    for (Index i = k - 1; i > 0; --i)
      std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(below(i + 1))]);
    return Permutation(std::move(images));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace commutant

#endif  // COMMUTANT_RANDOM_HPP
