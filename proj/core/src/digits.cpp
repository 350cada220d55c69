#include "specconv/digits.hpp"

#include <algorithm>
#include <numeric>

namespace specconv {

int compare(IntView a, IntView b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto c = a[i] <=> b[i];
    if (c < 0) return -1;
    if (c > 0) return 1;
  }
  return 0;
}

DigitSet DigitSet::from_vectors(std::size_t dim, const std::vector<IntVector>& elements) {
  std::vector<BigInt> flat;
  flat.reserve(elements.size() * dim);
  for (const auto& e : elements) {
    if (e.dim() != dim) throw DimensionMismatch("digit has dimension " + std::to_string(e.dim()) + ", expected " +
                                                std::to_string(dim));
    for (const auto& x : e) flat.push_back(x);
  }
  std::size_t dropped = 0;
  DigitSet s = from_flat_unsorted(dim, std::move(flat), &dropped);
  if (dropped != 0) throw DuplicateElement("digit set contains repeated elements");
  return s;
}

DigitSet DigitSet::from_scalars(const std::vector<BigInt>& values) {
  std::vector<IntVector> v;
  v.reserve(values.size());
  for (const auto& x : values) v.push_back(IntVector{x});
  return from_vectors(1, v);
}

DigitSet DigitSet::from_sorted_flat(std::size_t dim, std::vector<BigInt> flat) {
  if (dim == 0 || flat.size() % dim != 0) throw DimensionMismatch("flat coordinate count is not a multiple of d");
  DigitSet s(dim);
  s.flat_ = std::move(flat);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (compare(s[i - 1], s[i]) >= 0) throw InvalidArgument("digits are not strictly increasing");
  }
  return s;
}

DigitSet DigitSet::from_flat_unsorted(std::size_t dim, std::vector<BigInt> flat, std::size_t* dropped) {
  if (dim == 0 || flat.size() % dim != 0) throw DimensionMismatch("flat coordinate count is not a multiple of d");
  const std::size_t n = flat.size() / dim;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto view = [&](std::size_t i) { return IntView(flat.data() + i * dim, dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(view(a), view(b)) < 0; });
  DigitSet s(dim);
  s.flat_.reserve(flat.size());
  std::size_t drop = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (k > 0 && compare(view(order[k - 1]), view(i)) == 0) {
      ++drop;
      continue;
    }
    for (std::size_t c = 0; c < dim; ++c) s.flat_.push_back(std::move(flat[i * dim + c]));
  }
  if (dropped) *dropped = drop;
  return s;
}

std::vector<IntVector> DigitSet::to_vectors() const {
  std::vector<IntVector> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back((*this)[i]);
  return out;
}

bool DigitSet::contains(IntView v) const {
  if (v.size() != dim_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const int c = compare((*this)[mid], v);
    if (c == 0) return true;
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return false;
}

bool DigitSet::small_coordinates() const {
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  return std::all_of(flat_.begin(), flat_.end(), [](const BigInt& x) {
    return x.is_small() && x.small_value() > -kLimit && x.small_value() < kLimit;
  });
}

DigitSet transform(const IntMatrix& m, const DigitSet& s) {
  if (m.dim() != s.dim()) throw DimensionMismatch("matrix and digit set dimensions differ");
  std::vector<BigInt> flat;
  flat.reserve(s.flat().size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const IntVector v = m.apply(s[i]);
    for (const auto& x : v) flat.push_back(x);
  }
  std::size_t dropped = 0;
  DigitSet out = DigitSet::from_flat_unsorted(s.dim(), std::move(flat), &dropped);
  if (dropped) throw DuplicateElement("linear map is not injective on the digit set");
  return out;
}

DigitSet minkowski_sum(const DigitSet& a, const DigitSet& b, std::size_t* collisions) {
  if (a.dim() != b.dim()) throw DimensionMismatch("digit set dimensions differ");
  const std::size_t d = a.dim();
  std::vector<BigInt> flat;
  flat.reserve(a.size() * b.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t c = 0; c < d; ++c) flat.push_back(a[i][c] + b[j][c]);
    }
  }
  return DigitSet::from_flat_unsorted(d, std::move(flat), collisions);
}

DigitSet translate(const DigitSet& s, IntView v) {
  if (v.size() != s.dim()) throw DimensionMismatch("translation dimension differs");
  std::vector<BigInt> flat = s.flat();
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += v[i % s.dim()];
  return DigitSet::from_sorted_flat(s.dim(), std::move(flat));
}

DigitSet set_difference(const DigitSet& a, const DigitSet& b) {
  std::vector<BigInt> flat;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b.contains(a[i])) flat.insert(flat.end(), a[i].begin(), a[i].end());
  }
  if (flat.empty()) return DigitSet(a.dim());
  return DigitSet::from_sorted_flat(a.dim(), std::move(flat));
}

bool is_subset(const DigitSet& a, const DigitSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b.contains(a[i])) return false;
  }
  return true;
}

}  // namespace specconv
