#pragma once

#include <cstddef>
#include <iterator>
#include <span>
#include <vector>

#include "specconv/exactmat.hpp"

namespace specconv {

/// A finite set of integer vectors in Z^d, kept sorted lexicographically.
///
/// Coordinates are stored contiguously (element i occupies
/// [i*d, (i+1)*d)), so sets with millions of small elements stay cheap.
class DigitSet {
 public:
  DigitSet() = default;
  explicit DigitSet(std::size_t dim) : dim_(dim) {}

  /// Sorts the input; throws DuplicateElement on repeats, DimensionMismatch on ragged input.
  static DigitSet from_vectors(std::size_t dim, const std::vector<IntVector>& elements);
  /// Convenience for d = 1.
  static DigitSet from_scalars(const std::vector<BigInt>& values);
  /// Flat coordinates already strictly increasing in lexicographic order.
  /// The order is verified in one linear pass; throws InvalidArgument otherwise.
  static DigitSet from_sorted_flat(std::size_t dim, std::vector<BigInt> flat);
  /// Sorts and merges; duplicates are dropped silently. Returns the number dropped via *dropped.
  static DigitSet from_flat_unsorted(std::size_t dim, std::vector<BigInt> flat, std::size_t* dropped = nullptr);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return dim_ == 0 ? 0 : flat_.size() / dim_; }
  [[nodiscard]] bool empty() const noexcept { return size() == 0; }
  [[nodiscard]] IntView operator[](std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }
  [[nodiscard]] const std::vector<BigInt>& flat() const noexcept { return flat_; }
  [[nodiscard]] std::vector<IntVector> to_vectors() const;

  [[nodiscard]] bool contains(IntView v) const;
  /// True when every coordinate of every element fits in |x| < 2^31.
  [[nodiscard]] bool small_coordinates() const;

  class Iterator {
   public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = IntView;
    using difference_type = std::ptrdiff_t;
    Iterator() = default;
    Iterator(const DigitSet* s, std::size_t i) : s_(s), i_(i) {}
    IntView operator*() const { return (*s_)[i_]; }
    Iterator& operator++() {
      ++i_;
      return *this;
    }
    Iterator operator++(int) {
      Iterator t = *this;
      ++i_;
      return t;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) { return a.i_ == b.i_; }

   private:
    const DigitSet* s_ = nullptr;
    std::size_t i_ = 0;
  };
  [[nodiscard]] Iterator begin() const { return {this, 0}; }
  [[nodiscard]] Iterator end() const { return {this, size()}; }

  friend bool operator==(const DigitSet& a, const DigitSet& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BigInt> flat_;
};

/// Lexicographic comparison of equal-length integer views.
[[nodiscard]] int compare(IntView a, IntView b);

/// {m b : b in s}. Throws DuplicateElement if m is not injective on s.
[[nodiscard]] DigitSet transform(const IntMatrix& m, const DigitSet& s);
/// {a + b}. When distinct pairs collide the result is smaller than #a * #b; see *collisions.
[[nodiscard]] DigitSet minkowski_sum(const DigitSet& a, const DigitSet& b, std::size_t* collisions = nullptr);
/// {b + v : b in s}.
[[nodiscard]] DigitSet translate(const DigitSet& s, IntView v);
/// Elements of a not in b.
[[nodiscard]] DigitSet set_difference(const DigitSet& a, const DigitSet& b);
[[nodiscard]] bool is_subset(const DigitSet& a, const DigitSet& b);

}  // namespace specconv
