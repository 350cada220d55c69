#include "specconv/phase.hpp"

#include <cmath>
#include <numbers>

namespace specconv {

std::complex<double> unit_phase(double turns) {
  const double t = turns - std::round(turns);
  const double angle = -2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

double frac_to_double(const Rational& x) {
  const double r = x.frac().to_double();
  return r >= 1.0 ? 0.0 : r;
}

PhasePoint::PhasePoint(const RatVector& c) {
  RatVector reduced(c.dim());
  hi_.resize(c.dim());
  lo_.resize(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) {
    reduced[i] = c[i].frac();
    hi_[i] = reduced[i].to_double();
    lo_[i] = (reduced[i] - Rational::from_double(hi_[i])).to_double();
  }
  exact_ = std::move(reduced);
}

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("phase point dimensions differ");
  PhasePoint r;
  r.hi_.resize(a.dim());
  r.lo_.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    // two-sum of the high parts, then fold the low parts in
    const double s = a.hi_[i] + b.hi_[i];
    const double bb = s - a.hi_[i];
    const double err = (a.hi_[i] - (s - bb)) + (b.hi_[i] - bb);
    double lo = err + a.lo_[i] + b.lo_[i];
    double hi = s;
    if (hi >= 1.0) hi -= 1.0;
    const double h2 = hi + lo;
    lo = lo - (h2 - hi);
    r.hi_[i] = h2;
    r.lo_[i] = lo;
  }
  if (a.exact_ && b.exact_) {
    RatVector sum(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) sum[i] = ((*a.exact_)[i] + (*b.exact_)[i]).frac();
    r.exact_ = std::move(sum);
  }
  return r;
}

namespace {

inline double wrap01(double t) {
  double r = t - std::floor(t);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

double PhasePoint::dot_mod1_small(IntView n) const {
  double t = 0.0;
  for (std::size_t i = 0; i < hi_.size(); ++i) {
    const auto x = static_cast<double>(n[i].small_value());
    const double p = x * hi_[i];
    const double e = std::fma(x, hi_[i], -p);
    t += (p - std::floor(p)) + e + x * lo_[i];
  }
  return wrap01(t);
}

double PhasePoint::dot_mod1_small(const std::int64_t* n) const {
  double t = 0.0;
  for (std::size_t i = 0; i < hi_.size(); ++i) {
    const auto x = static_cast<double>(n[i]);
    const double p = x * hi_[i];
    const double e = std::fma(x, hi_[i], -p);
    t += (p - std::floor(p)) + e + x * lo_[i];
  }
  return wrap01(t);
}

double PhasePoint::dot_mod1(IntView n) const {
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  bool small = true;
  for (const auto& x : n) {
    if (!x.is_small() || x.small_value() <= -kLimit || x.small_value() >= kLimit) {
      small = false;
      break;
    }
  }
  if (small) return dot_mod1_small(n);
  if (!exact_) throw InvalidArgument("large integer phase requires an exact phase point");
  return exact_dot_mod1(*exact_, n);
}

double exact_dot_mod1(const RatVector& c, IntView n) {
  if (c.dim() != n.size()) throw DimensionMismatch("phase dimensions differ");
  Rational acc;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (n[i].is_zero() || c[i].is_zero()) continue;
    // reduce n_i mod den(c_i) before multiplying to keep the numbers small
    const BigInt ni = floor_mod(n[i], c[i].den());
    acc += (Rational(ni) * c[i]).frac();
  }
  return frac_to_double(acc);
}

}  // namespace specconv
