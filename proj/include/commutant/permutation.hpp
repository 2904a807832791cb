#ifndef COMMUTANT_PERMUTATION_HPP
#define COMMUTANT_PERMUTATION_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "commutant/core.hpp"

namespace commutant {

/// Bijection on {0, ..., k-1}. images()[i] is the image of i.
///
/// The textual and JSON forms are 1-based; the in-memory form is 0-based.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Index> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Index v : images_) {
      if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
        throw ArgumentError("permutation images are not a bijection on 0.." +
                            std::to_string(size() - 1));
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(Index k) {
    std::vector<Index> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), Index{0});
    return Permutation(std::move(images));
  }

  static Permutation from_one_based(const std::vector<Index>& images) {
    std::vector<Index> shifted(images.size());
    std::transform(images.begin(), images.end(), shifted.begin(),
                   [](Index v) { return v - 1; });
    return Permutation(std::move(shifted));
  }

  /// Transposition of a and b (0-based) on k points.
  static Permutation swap(Index k, Index a, Index b) {
    auto p = identity(k);
    std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
    return p;
  }

  /// Cycle 0 -> 1 -> ... -> k-1 -> 0.
  static Permutation rotation(Index k) {
    std::vector<Index> images(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) images[static_cast<std::size_t>(i)] = (i + 1) % k;
    return Permutation(std::move(images));
  }

  Index size() const { return static_cast<Index>(images_.size()); }
  Index operator()(Index i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& images() const { return images_; }

  std::vector<Index> one_based() const {
    std::vector<Index> out(images_.size());
    std::transform(images_.begin(), images_.end(), out.begin(), [](Index v) { return v + 1; });
    return out;
  }

  Permutation inverse() const {
    std::vector<Index> inv(images_.size());
    for (Index i = 0; i < size(); ++i) inv[static_cast<std::size_t>((*this)(i))] = i;
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (Index i = 0; i < size(); ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  /// Number of inversions; O(k^2), fine for the sizes used here.
  std::int64_t inversions() const {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
      for (std::size_t j = i + 1; j < images_.size(); ++j)
        if (images_[i] > images_[j]) ++count;
    return count;
  }

  int sign() const { return inversions() % 2 == 0 ? 1 : -1; }

  /// Permutation matrix with P(i, pi(i)) = 1, so (P x)_i = x_{pi(i)}.
  template <typename Scalar = double>
  Matrix<Scalar> to_matrix() const {
    Matrix<Scalar> P = Matrix<Scalar>::Zero(size(), size());
    for (Index i = 0; i < size(); ++i) P(i, (*this)(i)) = Scalar(1);
    return P;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> images_;
};

/// Composition (a * b)(i) = a(b(i)).
inline Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DimensionError("composing permutations of different sizes");
  std::vector<Index> images(static_cast<std::size_t>(a.size()));
  for (Index i = 0; i < a.size(); ++i) images[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(std::move(images));
}

/// All k! permutations in lexicographic order of their image lists.
inline std::vector<Permutation> all_permutations(Index k) {
  std::vector<Index> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), Index{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace commutant

#endif  // COMMUTANT_PERMUTATION_HPP
