#include "specconv/triples.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "specconv/phase.hpp"

namespace specconv {

namespace {

constexpr std::int64_t kFastLimit = std::int64_t{1} << 60;

bool fits_fast(const BigInt& x) {
  return x.is_small() && x.small_value() > -kFastLimit && x.small_value() < kFastLimit;
}

__int128 floor_div128(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// (H^*H)_{pq} depends on l_q - l_p only. When L has few distinct differences
// (lattice-like spectra) the Gram deviation is computed once per difference.
std::optional<double> difference_gram_deviation(const RatMatrix& rinv, const DigitSet& b, const DigitSet& l) {
  const std::size_t nl = l.size();
  const std::size_t d = l.dim();
  if (nl < 64) return std::nullopt;
  std::vector<std::int64_t> coords(nl * d);
  for (std::size_t j = 0; j < nl; ++j) {
    for (std::size_t t = 0; t < d; ++t) {
      const BigInt& x = l[j][t];
      if (!x.is_small() || x.small_value() <= -(std::int64_t{1} << 29) || x.small_value() >= (std::int64_t{1} << 29)) {
        return std::nullopt;
      }
      coords[j * d + t] = x.small_value();
    }
  }
  std::unordered_set<std::string> seen;
  std::vector<std::int64_t> diffs;
  std::vector<std::int64_t> key(d);
  const std::size_t budget = nl * nl / 8;
  for (std::size_t p = 0; p < nl; ++p) {
    for (std::size_t q = p + 1; q < nl; ++q) {
      for (std::size_t t = 0; t < d; ++t) key[t] = coords[q * d + t] - coords[p * d + t];
      if (seen.emplace(reinterpret_cast<const char*>(key.data()), d * sizeof(std::int64_t)).second) {
        diffs.insert(diffs.end(), key.begin(), key.end());
        if (seen.size() > budget) return std::nullopt;
      }
    }
  }
  std::vector<PhasePoint> pts;
  pts.reserve(b.size());
  for (const auto& x : b) pts.emplace_back(apply(rinv, x));
  const double scale = 1.0 / static_cast<double>(b.size());
  double dev = 0.0;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const std::int64_t* g = &diffs[i * d];
    std::complex<double> s = 0.0;
    for (const auto& c : pts) s += unit_phase(c.dot_mod1_small(g));
    dev = std::max(dev, std::abs(s) * scale);
  }
  return dev;
}

}  // namespace

FundamentalDomain::FundamentalDomain(const IntMatrix& r) : r_(r), det_(specconv::determinant(r)) {
  if (det_.is_zero()) throw SingularMatrix("matrix is singular");
  adj_ = specconv::adjugate(r);
  abs_det_ = abs(det_);
  const std::size_t d = r.dim();
  fast_ = fits_fast(abs_det_);
  for (std::size_t i = 0; i < d && fast_; ++i) {
    for (std::size_t j = 0; j < d; ++j) fast_ = fast_ && fits_fast(adj_(i, j));
  }
  if (fast_) {
    const std::int64_t s = det_.sign();
    adj64_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) adj64_[i * d + j] = s * adj_(i, j).small_value();
    }
    abs_det64_ = abs_det_.small_value();
  }
}

bool FundamentalDomain::fast_for(IntView b) const {
  if (!fast_) return false;
  for (const auto& x : b) {
    if (!fits_fast(x)) return false;
  }
  return true;
}

__int128 FundamentalDomain::fast_component(std::size_t i, IntView b) const {
  const std::size_t d = dim();
  __int128 a = 0;
  for (std::size_t j = 0; j < d; ++j) a += static_cast<__int128>(adj64_[i * d + j]) * b[j].small_value();
  return a;
}

IntVector FundamentalDomain::scaled_preimage(IntView b) const {
  if (b.size() != dim()) throw DimensionMismatch("digit dimension differs from matrix dimension");
  const std::size_t d = dim();
  IntVector a(d);
  if (fast_for(b)) {
    for (std::size_t i = 0; i < d; ++i) a[i] = BigInt::from_i128(fast_component(i, b));
    return a;
  }
  for (std::size_t i = 0; i < d; ++i) {
    BigInt acc;
    for (std::size_t j = 0; j < d; ++j) {
      if (!b[j].is_zero() && !adj_(i, j).is_zero()) acc += adj_(i, j) * b[j];
    }
    a[i] = det_.sign() < 0 ? -acc : acc;
  }
  return a;
}

bool FundamentalDomain::contains(IntView b) const {
  if (b.size() != dim()) throw DimensionMismatch("digit dimension differs from matrix dimension");
  if (fast_for(b)) {
    const __int128 dd = abs_det64_;
    for (std::size_t i = 0; i < dim(); ++i) {
      const __int128 twice = 2 * fast_component(i, b);
      if (twice < -dd || twice >= dd) return false;
    }
    return true;
  }
  const IntVector a = scaled_preimage(b);
  const BigInt neg = -abs_det_;
  for (const auto& x : a) {
    const BigInt twice = x + x;
    if (twice < neg || twice >= abs_det_) return false;
  }
  return true;
}

IntVector FundamentalDomain::rounding(IntView b) const {
  if (b.size() != dim()) throw DimensionMismatch("digit dimension differs from matrix dimension");
  const std::size_t d = dim();
  IntVector n(d);
  if (fast_for(b)) {
    const __int128 dd = abs_det64_;
    for (std::size_t i = 0; i < d; ++i) n[i] = BigInt::from_i128(floor_div128(2 * fast_component(i, b) + dd, 2 * dd));
    return n;
  }
  const IntVector a = scaled_preimage(b);
  const BigInt two_d = abs_det_ + abs_det_;
  for (std::size_t i = 0; i < d; ++i) n[i] = floor_div(a[i] + a[i] + abs_det_, two_d);
  return n;
}

IntVector FundamentalDomain::reduce(IntView b) const {
  const IntVector n = rounding(b);
  IntVector out(b);
  if (n.is_zero()) return out;
  return out - r_.apply(n);
}

BigInt FundamentalDomain::scaled_l1(IntView b) const {
  if (b.size() != dim()) throw DimensionMismatch("digit dimension differs from matrix dimension");
  if (fast_for(b)) {
    __int128 s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const __int128 a = fast_component(i, b);
      s += a < 0 ? -a : a;
    }
    return BigInt::from_i128(s);
  }
  BigInt s;
  for (const auto& x : scaled_preimage(b)) s += abs(x);
  return s;
}

HadamardReport hadamard_check(const IntMatrix& r, const DigitSet& b, const DigitSet& l, double tol) {
  if (b.empty() || l.empty()) throw EmptySet("Hadamard check needs nonempty B and L");
  if (b.dim() != r.dim() || l.dim() != r.dim()) throw DimensionMismatch("triple dimensions differ");
  HadamardReport rep;
  rep.rows = b.size();
  rep.cols = l.size();
  rep.square = rep.rows == rep.cols;

  const RatMatrix rinv = invert(r);
  const std::size_t nb = b.size();
  const std::size_t nl = l.size();
  if (auto dev = difference_gram_deviation(rinv, b, l)) {
    rep.max_deviation = *dev;
    rep.unitary = rep.square && *dev <= tol;
    return rep;
  }
  // column-major so that the Gram inner loop runs over contiguous memory
  std::vector<std::complex<double>> h(nb * nl);
  for (std::size_t i = 0; i < nb; ++i) {
    const PhasePoint c(apply(rinv, b[i]));
    for (std::size_t j = 0; j < nl; ++j) h[j * nb + i] = unit_phase(c.dot_mod1(l[j]));
  }
  const double scale = 1.0 / static_cast<double>(nb);
  double dev = 0.0;
  for (std::size_t p = 0; p < nl; ++p) {
    const std::complex<double>* hp = &h[p * nb];
    for (std::size_t q = p; q < nl; ++q) {
      const std::complex<double>* hq = &h[q * nb];
      double re = 0.0;
      double im = 0.0;
      for (std::size_t i = 0; i < nb; ++i) {
        // conj(hp) * hq
        re += hp[i].real() * hq[i].real() + hp[i].imag() * hq[i].imag();
        im += hp[i].real() * hq[i].imag() - hp[i].imag() * hq[i].real();
      }
      const std::complex<double> g(re * scale - (p == q ? 1.0 : 0.0), im * scale);
      dev = std::max(dev, std::abs(g));
    }
  }
  rep.max_deviation = dev;
  rep.unitary = rep.square && dev <= tol;
  return rep;
}

DigitSet mod_reduce(const DigitSet& b, const IntMatrix& r) {
  if (b.dim() != r.dim()) throw DimensionMismatch("digit set and matrix dimensions differ");
  const FundamentalDomain fd(r);
  std::vector<BigInt> flat;
  flat.reserve(b.flat().size());
  for (const auto& x : b) {
    const IntVector y = fd.reduce(x);
    flat.insert(flat.end(), y.begin(), y.end());
  }
  std::size_t dropped = 0;
  DigitSet out = DigitSet::from_flat_unsorted(b.dim(), std::move(flat), &dropped);
  if (dropped != 0) {
    throw CongruentDigits(std::to_string(dropped) + " digit(s) congruent modulo R Z^d to another digit");
  }
  return out;
}

HadamardTriple::HadamardTriple(IntMatrix r, DigitSet b, DigitSet l, double tol)
    : r_(std::move(r)), b_(std::move(b)), l_(std::move(l)), tol_(tol) {
  const HadamardReport rep = hadamard_check(r_, b_, l_, tol_);
  deviation_ = rep.max_deviation;
  if (!rep.square) {
    throw TripleInvalid("#B = " + std::to_string(rep.rows) + " differs from #L = " + std::to_string(rep.cols));
  }
  if (!rep.unitary) {
    throw TripleInvalid("exponential matrix is not unitary (max deviation " + std::to_string(rep.max_deviation) + ")");
  }
}

ComposedComponents compose_components(std::span<const Level> levels, std::size_t max_elements) {
  if (levels.empty()) throw InvalidArgument("composition needs at least one triple");
  const std::size_t d = levels.front().r.dim();
  std::size_t projected = 1;
  for (const auto& lv : levels) {
    if (lv.r.dim() != d || lv.b.dim() != d) throw DimensionMismatch("composed triples have different dimensions");
    if (!lv.l) throw TripleInvalid("composition needs L at every level");
    if (lv.l->dim() != d) throw DimensionMismatch("composed triples have different dimensions");
    if (projected > max_elements / lv.b.size()) {
      throw TruncationTooLarge("composed digit set exceeds the cap " + std::to_string(max_elements));
    }
    projected *= lv.b.size();
  }
  ComposedComponents out{levels.front().r, levels.front().b, *levels.front().l};
  IntMatrix prefix = levels.front().r;  // R_{j-1} ... R_1
  for (std::size_t j = 1; j < levels.size(); ++j) {
    const Level& lv = levels[j];
    std::size_t collisions = 0;
    out.b = minkowski_sum(transform(lv.r, out.b), lv.b, &collisions);
    if (collisions) throw TripleInvalid("composed digit set has coinciding sums");
    out.l = minkowski_sum(out.l, transform(prefix.transpose(), *lv.l), &collisions);
    if (collisions) throw TripleInvalid("composed spectrum has coinciding sums");
    prefix = lv.r * prefix;
  }
  out.r = prefix;
  return out;
}

ComposedComponents compose_components(const TripleSequence& seq, std::size_t from, std::size_t to,
                                      std::size_t max_elements) {
  if (from < 1 || from > to) throw IndexOutOfRange("composition range must satisfy 1 <= from <= to");
  std::vector<Level> levels;
  for (std::size_t k = from; k <= to; ++k) levels.push_back(seq.level(k));
  return compose_components(levels, max_elements);
}

HadamardTriple compose_triples(std::span<const HadamardTriple> ts) {
  if (ts.empty()) throw InvalidArgument("composition needs at least one triple");
  std::vector<Level> levels;
  levels.reserve(ts.size());
  for (const auto& t : ts) levels.push_back(Level{t.r(), t.b(), t.l()});
  ComposedComponents c = compose_components(levels);
  return HadamardTriple(std::move(c.r), std::move(c.b), std::move(c.l), ts.front().tolerance());
}

HadamardTriple shift_spectrum(const HadamardTriple& t, IntView l0) {
  return HadamardTriple(t.r(), t.b(), translate(t.l(), l0), t.tolerance());
}

}  // namespace specconv
