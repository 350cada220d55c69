#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "specconv/digits.hpp"
#include "specconv/exactmat.hpp"

namespace testsupport {

using specconv::BigInt;
using specconv::DigitSet;
using specconv::IntMatrix;
using specconv::IntVector;
using specconv::Rational;
using specconv::RatMatrix;
using specconv::RatVector;

inline Rational q(const char* s) { return Rational::parse(s); }
inline Rational q(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

inline IntVector iv(std::initializer_list<long long> xs) {
  IntVector v(xs.size());
  std::size_t i = 0;
  for (long long x : xs) v[i++] = BigInt(x);
  return v;
}

inline RatVector rv(std::initializer_list<Rational> xs) { return RatVector(std::vector<Rational>(xs)); }

inline IntMatrix im(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<BigInt>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long long x : row) r.back().emplace_back(x);
  }
  return IntMatrix::from_rows(r);
}

inline RatMatrix rm(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) r.emplace_back(row);
  return RatMatrix::from_rows(r);
}

inline DigitSet set1(std::initializer_list<long long> xs) {
  std::vector<BigInt> v;
  for (long long x : xs) v.emplace_back(x);
  return DigitSet::from_scalars(v);
}

inline DigitSet set2(std::initializer_list<std::pair<long long, long long>> xs) {
  std::vector<IntVector> v;
  for (const auto& [a, b] : xs) v.push_back(iv({a, b}));
  return DigitSet::from_vectors(2, v);
}

inline DigitSet grid2(long long lo, long long hi, long long step = 1, long long offset = 0) {
  std::vector<IntVector> v;
  for (long long i = lo; i <= hi; ++i) {
    for (long long j = lo; j <= hi; ++j) v.push_back(iv({step * i + offset, step * j + offset}));
  }
  return DigitSet::from_vectors(2, v);
}

/// Max |(H*H - I)_{ij}| computed in long double, independent of the library kernel.
inline long double brute_gram_deviation(const IntMatrix& r, const DigitSet& b, const DigitSet& l) {
  const RatMatrix rinv = specconv::invert(r);
  const std::size_t n = b.size();
  std::vector<std::vector<std::complex<long double>>> h(n, std::vector<std::complex<long double>>(l.size()));
  for (std::size_t i = 0; i < n; ++i) {
    const RatVector c = specconv::apply(rinv, b[i]);
    for (std::size_t j = 0; j < l.size(); ++j) {
      const Rational ph = specconv::dot(c, l[j]).frac();
      const long double t = static_cast<long double>(ph.num().to_double()) / ph.den().to_double();
      const long double a = -2.0L * 3.14159265358979323846264338327950288L * t;
      h[i][j] = std::complex<long double>(std::cos(a), std::sin(a));
    }
  }
  long double dev = 0;
  for (std::size_t p = 0; p < l.size(); ++p) {
    for (std::size_t s = 0; s < l.size(); ++s) {
      std::complex<long double> g = 0;
      for (std::size_t i = 0; i < n; ++i) g += std::conj(h[i][p]) * h[i][s];
      g /= static_cast<long double>(n);
      if (p == s) g -= 1.0L;
      dev = std::max(dev, std::abs(g));
    }
  }
  return dev;
}

struct RandomTriple {
  IntMatrix r;
  DigitSet b;
  DigitSet l;
};

/// Random Hadamard triple in dimension d: a product of one-dimensional DFT
/// triples (n q, q {0..n-1}, {0..n-1}), digits and spectrum moved within their
/// congruence classes, then conjugated by a random unimodular matrix.
inline RandomTriple random_triple(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> n_dist(2, 3);
  std::uniform_int_distribution<int> q_dist(1, 3);
  std::uniform_int_distribution<int> z_dist(-1, 1);
  std::vector<long long> n(d), qq(d);
  for (std::size_t i = 0; i < d; ++i) {
    n[i] = n_dist(rng);
    qq[i] = q_dist(rng);
  }
  IntMatrix r(d);
  for (std::size_t i = 0; i < d; ++i) r(i, i) = BigInt(n[i] * qq[i]);

  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(n[i]);
  std::vector<IntVector> bs, ls;
  for (std::size_t idx = 0; idx < total; ++idx) {
    IntVector b(d), l(d);
    std::size_t rest = idx;
    for (std::size_t i = 0; i < d; ++i) {
      const long long j = static_cast<long long>(rest % static_cast<std::size_t>(n[i]));
      rest /= static_cast<std::size_t>(n[i]);
      b[i] = BigInt(qq[i] * j + n[i] * qq[i] * z_dist(rng));
      l[i] = BigInt(j + n[i] * z_dist(rng));
    }
    bs.push_back(b);
    ls.push_back(l);
  }

  // unimodular U from a few elementary row operations
  IntMatrix u = IntMatrix::identity(d);
  if (d > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (int step = 0; step < 3; ++step) {
      const std::size_t a = pick(rng);
      const std::size_t c = pick(rng);
      if (a == c) continue;
      const long long f = z_dist(rng);
      for (std::size_t j = 0; j < d; ++j) u(a, j) += BigInt(f) * u(c, j);
    }
  }
  const RatMatrix uinv = specconv::invert(u);
  IntMatrix uinv_int(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) uinv_int(i, j) = uinv(i, j).num();
  }
  const IntMatrix r2 = u * r * uinv_int;
  const IntMatrix uinv_t = uinv_int.transpose();
  for (auto& b : bs) b = u.apply(b);
  for (auto& l : ls) l = uinv_t.apply(l);
  return {r2, DigitSet::from_vectors(d, bs), DigitSet::from_vectors(d, ls)};
}

}  // namespace testsupport
