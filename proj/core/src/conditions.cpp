#include "specconv/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "specconv/triples.hpp"

namespace specconv {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged_numerically: return "converged-numerically";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::certified: return "certified";
  }
  return "?";
}

std::string to_string(ContractivityVerdict v) {
  switch (v) {
    case ContractivityVerdict::verified: return "verified";
    case ContractivityVerdict::unverified_tail: return "unverified-tail";
    case ContractivityVerdict::fails: return "fails";
  }
  return "?";
}

void push_term(SeriesDiagnostics& s, std::size_t k, Rational term) {
  s.total += term;
  s.indices.push_back(k);
  s.terms.push_back(std::move(term));
  s.partial_sums.push_back(s.total.to_double());
}

namespace {

struct BlockFit {
  bool usable = false;
  bool tail_zero = false;
  double exponent = 0.0;
};

// Block sums over (n/4, n/2] and (n/2, n] of nonnegative magnitudes.
BlockFit block_fit(const std::vector<double>& mags) {
  BlockFit f;
  const std::size_t n = mags.size();
  if (n < 8) return f;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t i = n / 4; i < n / 2; ++i) b1 += mags[i];
  for (std::size_t i = n / 2; i < n; ++i) b2 += mags[i];
  f.usable = true;
  if (b2 == 0.0) {
    f.tail_zero = true;
    return f;
  }
  if (b1 == 0.0) {
    f.usable = false;
    return f;
  }
  f.exponent = 1.0 - std::log2(b2 / b1);
  return f;
}

std::string format_double(double x) {
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

}  // namespace

void assign_verdict(SeriesDiagnostics& s, const std::optional<TailBound>& tail) {
  if (tail && !s.indices.empty()) {
    s.verdict = Verdict::certified;
    s.tail_bound = tail->tail(s.indices.back());
    s.bound_used = tail->description;
    return;
  }
  const bool all_zero = std::all_of(s.terms.begin(), s.terms.end(), [](const Rational& t) { return t.is_zero(); });
  if (all_zero && !s.terms.empty()) {
    s.verdict = Verdict::converged_numerically;
    s.bound_used = "all terms vanish";
    return;
  }
  std::vector<double> mags;
  mags.reserve(s.terms.size());
  for (const auto& t : s.terms) mags.push_back(std::abs(t.to_double()));
  const BlockFit f = block_fit(mags);
  if (!f.usable) {
    s.verdict = Verdict::inconclusive;
    s.bound_used = "too few nonzero terms for a tail fit";
    return;
  }
  if (f.tail_zero) {
    s.verdict = Verdict::converged_numerically;
    s.bound_used = "last half of the terms vanish";
    return;
  }
  s.bound_used = "block-sum decay exponent p = " + format_double(f.exponent) + " (p > 1.2 convergent, p < 1.05 divergent)";
  if (f.exponent > 1.2) {
    s.verdict = Verdict::converged_numerically;
  } else if (f.exponent < 1.05) {
    s.verdict = Verdict::diverging;
  } else {
    s.verdict = Verdict::inconclusive;
  }
}

std::string to_csv(const SeriesDiagnostics& s) {
  std::ostringstream out;
  out << "k,term,partial_sum\n";
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    out << s.indices[i] << ',' << s.terms[i].to_string() << ',' << format_double(s.partial_sums[i]) << '\n';
  }
  return out.str();
}

std::string to_csv(const VectorSeriesDiagnostics& s) {
  std::ostringstream out;
  const std::size_t d = s.total.dim();
  out << 'k';
  for (std::size_t c = 0; c < d; ++c) out << ",term_" << (c + 1);
  for (std::size_t c = 0; c < d; ++c) out << ",partial_sum_" << (c + 1);
  out << '\n';
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    out << s.indices[i];
    for (const auto& x : s.terms[i]) out << ',' << x.to_string();
    for (double x : s.partial_sums[i]) out << ',' << format_double(x);
    out << '\n';
  }
  return out.str();
}

std::string summary_line(const SeriesDiagnostics& s) {
  std::ostringstream out;
  out << s.name << ": K=" << (s.indices.empty() ? 0 : s.indices.back());
  const std::string exact = s.total.to_string();
  if (exact.size() <= 4096) {
    out << " sum=" << exact;
  } else {
    out << " sum=(exact value with " << exact.size() << " characters omitted)";
  }
  out << " ~ " << format_double(s.total.to_double()) << " verdict=" << to_string(s.verdict);
  if (s.tail_bound) out << " tail<=" << format_double(*s.tail_bound);
  if (!s.bound_used.empty()) out << " [" << s.bound_used << "]";
  return out.str();
}

SetPairCounts count_pair(const DigitSet& a, const DigitSet& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("set sequences have different dimensions");
  SetPairCounts c{a.size(), b.size(), 0, 0};
  for (const auto& x : a) c.only_a += b.contains(x) ? 0 : 1;
  for (const auto& x : b) c.only_b += a.contains(x) ? 0 : 1;
  return c;
}

Rational defect_term(const SetPairCounts& c) {
  if (c.size_a == 0 || c.size_b == 0) throw EmptySet("defect term of an empty set");
  const Rational ta(BigInt(static_cast<std::uint64_t>(c.only_b)), BigInt(static_cast<std::uint64_t>(c.size_b)));
  const Rational tb(BigInt(static_cast<std::uint64_t>(c.only_a)), BigInt(static_cast<std::uint64_t>(c.size_a)));
  return std::max(ta, tb);
}

SeriesDiagnostics equivalence_defect(const std::function<SetPairCounts(std::size_t)>& counts, std::size_t upto,
                                     const std::optional<TailBound>& tail) {
  if (upto == 0) throw InvalidArgument("series length must be at least 1");
  SeriesDiagnostics s;
  s.name = "equivalence-defect";
  for (std::size_t k = 1; k <= upto; ++k) push_term(s, k, defect_term(counts(k)));
  assign_verdict(s, tail);
  return s;
}

SeriesDiagnostics equivalence_defect(const SetSequence& a, const SetSequence& b, std::size_t upto,
                                     const std::optional<TailBound>& tail) {
  return equivalence_defect([&](std::size_t k) { return count_pair(a(k), b(k)); }, upto, tail);
}

RbcSplit rbc_split(const IntMatrix& r, const DigitSet& b) {
  const FundamentalDomain fd(r);
  std::vector<BigInt> f1, f2;
  for (const auto& x : b) {
    auto& dst = fd.contains(x) ? f1 : f2;
    dst.insert(dst.end(), x.begin(), x.end());
  }
  return {DigitSet::from_sorted_flat(b.dim(), std::move(f1)), DigitSet::from_sorted_flat(b.dim(), std::move(f2))};
}

SeriesDiagnostics rbc_series(const TripleSequence& seq, std::size_t upto) {
  if (upto == 0) throw InvalidArgument("series length must be at least 1");
  SeriesDiagnostics s;
  s.name = "rbc";
  for (std::size_t k = 1; k <= upto; ++k) {
    const FundamentalDomain fd(seq.matrix(k));
    const DigitSet b = seq.digits(k);
    std::uint64_t outside = 0;
    for (const auto& x : b) outside += fd.contains(x) ? 0 : 1;
    push_term(s, k, Rational(BigInt(outside), BigInt(static_cast<std::uint64_t>(b.size()))));
  }
  assign_verdict(s, seq.tail_bounds().rbc);
  return s;
}

Rational pcc_sup_squared(const IntMatrix& r) {
  const std::size_t d = r.dim();
  if (d > 20) throw DimensionTooLarge("vertex enumeration needs 2^d <= 2^20");
  const RatMatrix rit = invert(r).transpose();
  Rational best;
  RatVector xi(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    for (std::size_t i = 0; i < d; ++i) xi[i] = ((mask >> i) & 1u) ? Rational(-1) : Rational(1);
    Rational v = squared_norm(rit.apply(xi.view()));
    if (v > best) best = std::move(v);
  }
  return best * Rational(static_cast<std::uint64_t>(d));
}

double pcc_sup(const IntMatrix& r) { return std::sqrt(pcc_sup_squared(r).to_double()); }

namespace {

void check_level(const Rational& l) {
  if (l.sign() <= 0 || l >= Rational(1)) throw InvalidArgument("PCC level l must lie in (0, 1)");
}

// ||R^{-1} b||_1 < (1-l)/2  <=>  2 q |det| ||R^{-1}b||_1 < (q - p) |det| for l = p/q
struct PccTest {
  FundamentalDomain fd;
  BigInt lhs_scale;
  BigInt rhs;
  PccTest(const IntMatrix& r, const Rational& l)
      : fd(r), lhs_scale(l.den() + l.den()), rhs((l.den() - l.num()) * abs(fd.determinant())) {}
  [[nodiscard]] bool inside(IntView b) const { return lhs_scale * fd.scaled_l1(b) < rhs; }
};

}  // namespace

PccSplit pcc_split(const IntMatrix& r, const DigitSet& b, const Rational& l) {
  check_level(l);
  const PccTest test(r, l);
  std::vector<BigInt> f1, f2;
  for (const auto& x : b) {
    auto& dst = test.inside(x) ? f1 : f2;
    dst.insert(dst.end(), x.begin(), x.end());
  }
  return {DigitSet::from_sorted_flat(b.dim(), std::move(f1)), DigitSet::from_sorted_flat(b.dim(), std::move(f2))};
}

PccDiagnostics pcc_series(const TripleSequence& seq, const Rational& l, std::vector<std::size_t> subseq,
                          std::size_t upto) {
  check_level(l);
  if (subseq.empty()) {
    if (upto == 0) throw InvalidArgument("series length must be at least 1");
    for (std::size_t k = 1; k <= upto; ++k) subseq.push_back(k);
  }
  if (!std::is_sorted(subseq.begin(), subseq.end()) ||
      std::adjacent_find(subseq.begin(), subseq.end()) != subseq.end() || subseq.front() == 0) {
    throw InvalidArgument("PCC subsequence must be strictly increasing and start at 1 or later");
  }
  PccDiagnostics out;
  out.series.name = "pcc";
  out.margin_positive = true;
  const Rational one_minus_l = Rational(1) - l;
  const Rational one_minus_l_sq = one_minus_l * one_minus_l;
  bool first = true;
  for (std::size_t k : subseq) {
    const IntMatrix r = seq.matrix(k);
    const PccTest test(r, l);
    const DigitSet b = seq.digits(k);
    std::uint64_t outside = 0;
    for (const auto& x : b) outside += test.inside(x) ? 0 : 1;
    push_term(out.series, k, Rational(BigInt(outside), BigInt(static_cast<std::uint64_t>(b.size()))));

    const Rational sup_sq = pcc_sup_squared(r);
    const double margin = one_minus_l.to_double() - std::sqrt(sup_sq.to_double());
    if (first || margin < out.min_margin) {
      out.min_margin = margin;
      out.min_margin_index = k;
      first = false;
    }
    if (!(sup_sq < one_minus_l_sq)) out.margin_positive = false;
  }
  std::optional<TailBound> tail = seq.tail_bounds().pcc;
  if (tail && l > seq.tail_bounds().pcc_max_l) tail.reset();
  assign_verdict(out.series, tail);
  return out;
}

ThreeSeries three_series(const TripleSequence& seq, const Rational& r, std::size_t upto, double cauchy_tol) {
  if (r.sign() <= 0) throw InvalidArgument("three-series radius must be positive");
  if (upto == 0) throw InvalidArgument("series length must be at least 1");
  const std::size_t d = seq.dim();
  const Rational r2 = r * r;
  ThreeSeries out;
  out.outside.name = "three-series-i";
  out.mean.name = "three-series-ii";
  out.variance.name = "three-series-iii";
  out.mean.total = RatVector(d);

  IntMatrix product = IntMatrix::identity(d);
  for (std::size_t k = 1; k <= upto; ++k) {
    product = seq.matrix(k) * product;
    const RatMatrix inv = invert(product);
    const DigitSet b = seq.digits(k);
    const Rational w(BigInt(1), BigInt(static_cast<std::uint64_t>(b.size())));
    std::uint64_t outside = 0;
    RatVector sum(d);
    Rational second;
    for (const auto& x : b) {
      const RatVector p = apply(inv, x);
      Rational n2 = squared_norm(p);
      if (n2 > r2) {
        ++outside;
        continue;
      }
      sum += p;
      second += n2;
    }
    RatVector mean(d);
    for (std::size_t i = 0; i < d; ++i) mean[i] = sum[i] * w;
    Rational var = second * w - squared_norm(mean);

    push_term(out.outside, k, Rational(BigInt(outside), BigInt(static_cast<std::uint64_t>(b.size()))));
    push_term(out.variance, k, std::move(var));
    out.mean.indices.push_back(k);
    out.mean.total += mean;
    out.mean.terms.push_back(std::move(mean));
    std::vector<double> ps(d);
    for (std::size_t i = 0; i < d; ++i) ps[i] = out.mean.total[i].to_double();
    out.mean.partial_sums.push_back(std::move(ps));
  }
  assign_verdict(out.outside);
  assign_verdict(out.variance);

  // Cauchy increments ||S_K - S_k||_2 over the last quarter, accumulated exactly from the end
  const std::size_t n = out.mean.terms.size();
  RatVector tail(d);
  double max_inc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) max_inc = std::max(max_inc, std::sqrt(squared_norm(tail).to_double()));
    if (i < n - std::max<std::size_t>(1, n / 4)) break;
    tail += out.mean.terms[i];
  }
  out.mean.max_tail_increment = max_inc;
  out.mean.bound_used = "Cauchy increments over the last quarter, tolerance " + format_double(cauchy_tol);
  if (n >= 4 && max_inc < cauchy_tol) {
    out.mean.verdict = Verdict::converged_numerically;
  } else {
    std::vector<double> mags;
    for (const auto& t : out.mean.terms) mags.push_back(std::sqrt(squared_norm(t).to_double()));
    const BlockFit f = block_fit(mags);
    out.mean.verdict = (f.usable && !f.tail_zero && f.exponent < 1.05) ? Verdict::diverging : Verdict::inconclusive;
  }
  return out;
}

ContractivityReport contractivity_report(const TripleSequence& seq, std::size_t upto, double tol) {
  if (upto == 0) throw InvalidArgument("scan length must be at least 1");
  ContractivityReport rep;
  rep.declared = seq.declared_contractivity();
  for (std::size_t k = 1; k <= upto; ++k) {
    const double u = spectral_norm_upper(invert(seq.matrix(k)), tol);
    rep.norms.push_back(u);
    if (k == 1 || u > rep.max_norm) {
      rep.max_norm = u;
      rep.argmax = k;
    }
  }
  if (rep.max_norm >= 1.0) {
    rep.verdict = ContractivityVerdict::fails;
  } else if (!rep.declared) {
    rep.verdict = ContractivityVerdict::unverified_tail;
  } else if (rep.max_norm <= rep.declared->to_double() + tol) {
    rep.verdict = ContractivityVerdict::verified;
  } else {
    rep.verdict = ContractivityVerdict::fails;
  }
  return rep;
}

PointSetSequence scaled_digit_sets(const TripleSequence& seq) {
  return [seq](std::size_t k) {
    const RatMatrix inv = invert(seq.product_range(0, k));
    const DigitSet b = seq.digits(k);
    PointSet out;
    out.reserve(b.size());
    for (const auto& x : b) out.push_back(apply(inv, x));
    return out;
  };
}

PointSetSequence as_point_sets(const SetSequence& s) {
  return [s](std::size_t k) {
    const DigitSet b = s(k);
    PointSet out;
    out.reserve(b.size());
    for (const auto& x : b) out.push_back(to_rational(x));
    return out;
  };
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PointSet sorted_unique(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t draw, std::uint64_t k) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ draw) ^ (k * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

CouplingReport coupled_sample(const PointSetSequence& a, const PointSetSequence& b, std::size_t upto,
                              std::size_t draws, std::uint64_t seed, bool keep_sums) {
  if (upto == 0) throw InvalidArgument("sample length must be at least 1");
  if (draws == 0) throw InvalidArgument("number of draws must be at least 1");
  CouplingReport rep;
  rep.draws = draws;
  rep.seed = seed;
  for (std::size_t k = 1; k <= upto; ++k) {
    const PointSet sa = sorted_unique(a(k));
    const PointSet sb = sorted_unique(b(k));
    if (sa.empty() || sb.empty()) throw EmptySet("coupled sets must be nonempty");
    const std::size_t d = sa.front().dim();
    if (sb.front().dim() != d) throw DimensionMismatch("coupled sets have different dimensions");
    if (k == 1) {
      rep.dim = d;
      if (keep_sums) {
        rep.sums_x.assign(draws * d, 0.0);
        rep.sums_y.assign(draws * d, 0.0);
      }
    } else if (d != rep.dim) {
      throw DimensionMismatch("coupled sets change dimension");
    }

    // shared elements first, in sorted order, then the private ones
    PointSet shared, only_a, only_b;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
    PointSet al = shared, bl = shared;
    al.insert(al.end(), only_a.begin(), only_a.end());
    bl.insert(bl.end(), only_b.begin(), only_b.end());

    const bool swapped = al.size() > bl.size();
    const PointSet& small = swapped ? bl : al;
    const PointSet& large = swapped ? al : bl;
    const std::size_t m = small.size();
    const std::size_t n = large.size();
    const std::size_t s = shared.size();

    CouplingLevel lv;
    lv.k = k;
    lv.size_a = sa.size();
    lv.size_b = sb.size();
    lv.shared = s;
    lv.exact_probability = Rational(1) - Rational(BigInt(static_cast<std::uint64_t>(s)), BigInt(static_cast<std::uint64_t>(n)));

    std::vector<double> small_d(m * d), large_d(n * d);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < d; ++c) small_d[i * d + c] = small[i][c].to_double();
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < d; ++c) large_d[i * d + c] = large[i][c].to_double();
    }

    const double inv_m = 1.0 / static_cast<double>(m);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double gap = inv_m - inv_n;
    for (std::size_t t = 0; t < draws; ++t) {
      const double x = counter_uniform(seed, t, k);
      const std::size_t i = std::min(static_cast<std::size_t>(x * static_cast<double>(m)), m - 1);
      const double o = x - static_cast<double>(i) * inv_m;
      std::size_t jl = i;
      if (n > m && o >= inv_n) {
        const double p = static_cast<double>(i) * gap + (o - inv_n);
        jl = m + std::min(static_cast<std::size_t>(p * static_cast<double>(n)), n - m - 1);
      }
      const bool same = i < s && jl == i;
      if (!same) ++lv.mismatches;
      if (keep_sums) {
        const double* xs = swapped ? &large_d[jl * d] : &small_d[i * d];
        const double* ys = swapped ? &small_d[i * d] : &large_d[jl * d];
        for (std::size_t c = 0; c < d; ++c) {
          rep.sums_x[t * d + c] += xs[c];
          rep.sums_y[t * d + c] += ys[c];
        }
      }
    }
    lv.frequency = static_cast<double>(lv.mismatches) / static_cast<double>(draws);
    rep.exact_sum += lv.exact_probability;
    rep.empirical_sum += lv.frequency;
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace specconv
