#include "specconv/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specconv/errors.hpp"

namespace specconv {

KChooser KChooser::windowed(int radius, std::size_t depth) {
  if (radius < 0) throw InvalidArgument("search radius must be nonnegative");
  KChooser c;
  c.kind = Kind::windowed;
  c.radius = radius;
  c.depth = depth;
  return c;
}

KChooser KChooser::from_table(std::map<KChoiceKey, IntVector> table) {
  KChooser c;
  c.kind = Kind::table;
  c.table = std::move(table);
  return c;
}

namespace {

DigitSet origin_set(std::size_t d) { return DigitSet::from_vectors(d, {IntVector(d)}); }

bool is_zero_vector(IntView v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x.is_zero(); });
}

Level checked_level(const TripleSequence& seq, std::size_t k, double tol) {
  Level lv = seq.level(k);
  if (!lv.l) throw TripleInvalid("level " + std::to_string(k) + " has no spectrum set");
  const HadamardReport rep = hadamard_check(lv.r, lv.b, *lv.l, tol);
  if (!rep.unitary) {
    std::ostringstream msg;
    msg << "level " << k << " fails the Hadamard check (deviation " << rep.max_deviation << ")";
    throw TripleInvalid(msg.str());
  }
  return lv;
}

// |R^{-T} lambda| < delta0 / 2 for every lambda, decided exactly.
bool milestone_admissible(const IntMatrix& product, const DigitSet& lambda, const Rational& delta0) {
  const RatMatrix rit = invert(product).transpose();
  const Rational limit = delta0 * delta0 / Rational(4);
  for (const auto& l : lambda) {
    if (!(squared_norm(apply(rit, l)) < limit)) return false;
  }
  return true;
}

// Enumerates {-w..w}^d with the zero vector first, then in lexicographic order.
std::vector<IntVector> window_vectors(std::size_t d, int w) {
  std::vector<IntVector> out;
  out.emplace_back(d);
  std::vector<int> idx(d, -w);
  if (w == 0) return out;
  for (;;) {
    if (!std::all_of(idx.begin(), idx.end(), [](int v) { return v == 0; })) {
      IntVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = BigInt(idx[i]);
      out.push_back(std::move(v));
    }
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (idx[i] < w) {
        ++idx[i];
        break;
      }
      idx[i] = -w;
      if (i == 0) return out;
    }
  }
}

}  // namespace

SpectrumLevels build_spectrum(const TripleSequence& seq, std::vector<std::size_t> milestones,
                              const KChooser& chooser, const SpectrumOptions& options) {
  if (milestones.empty()) throw InvalidArgument("at least one milestone is required");
  if (milestones.front() == 0) throw InvalidArgument("milestones are indexed from 1");
  for (std::size_t i = 1; i < milestones.size(); ++i) {
    if (milestones[i] <= milestones[i - 1]) throw InvalidArgument("milestones must be strictly increasing");
  }
  const std::size_t d = seq.dim();
  SpectrumLevels out;
  out.dim = d;

  DigitSet lambda = origin_set(d);
  IntMatrix prefix = IntMatrix::identity(d);  // R_{m_{j-1}} ... R_1
  std::size_t prev = 0;
  std::size_t verified = 0;

  for (std::size_t j = 0; j < milestones.size(); ++j) {
    std::size_t m = std::max(milestones[j], prev + 1);
    if (!seq.has_level(m)) {
      throw MilestoneGap("milestone " + std::to_string(m) + " exceeds the sequence length");
    }
    if (options.delta0 && j > 0) {
      IntMatrix product = prefix;
      for (std::size_t k = prev + 1; k <= m; ++k) product = seq.matrix(k) * product;
      const std::size_t last = m + options.milestone_search;
      while (!milestone_admissible(product, lambda, *options.delta0)) {
        ++m;
        if (m > last || !seq.has_level(m)) {
          throw MilestoneGap("no admissible milestone at or after " + std::to_string(milestones[j]));
        }
        product = seq.matrix(m) * product;
      }
    }

    // composed (R, L) of levels prev+1..m
    IntMatrix r = IntMatrix::identity(d);
    DigitSet l = origin_set(d);
    for (std::size_t k = prev + 1; k <= m; ++k) {
      const Level lv = k > verified ? checked_level(seq, k, options.tol) : seq.level(k);
      verified = std::max(verified, k);
      if (l.size() * lv.l->size() > options.max_elements) {
        throw TruncationTooLarge("composed spectrum exceeds the element cap");
      }
      std::size_t collisions = 0;
      l = minkowski_sum(l, transform(r.transpose(), *lv.l), &collisions);
      if (collisions != 0) throw TripleInvalid("composed spectrum has colliding elements");
      r = lv.r * r;
    }

    std::vector<BigInt> shifted;
    shifted.reserve(l.size() * d);
    const IntMatrix rt = r.transpose();
    if (chooser.kind == KChooser::Kind::zero) {
      shifted = l.flat();
      for (const auto& x : l) out.k_choices.emplace(KChoiceKey{IntVector(x), j + 1}, IntVector(d));
    } else {
      std::optional<TailEvaluator> tail;
      BigInt q;
      IntMatrix adj_t;
      std::vector<IntVector> window;
      if (chooser.kind == KChooser::Kind::windowed) {
        const BigInt det = determinant(r);
        q = abs(det);
        adj_t = adjugate(r).transpose();
        if (det.sign() < 0) {
          for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) adj_t(a, b) = -adj_t(a, b);
          }
        }
        tail.emplace(seq, m, chooser.depth, q);
        window = window_vectors(d, chooser.radius);
      }
      for (const auto& x : l) {
        IntVector k(d);
        if (chooser.kind == KChooser::Kind::table) {
          auto it = chooser.table.find(KChoiceKey{IntVector(x), j + 1});
          if (it != chooser.table.end()) {
            if (it->second.dim() != d) throw DimensionMismatch("k-choice has the wrong dimension");
            k = it->second;
          }
        } else if (!is_zero_vector(x)) {
          // x' = R^{-T} lambda = g0 / q; maximise |nu^(x' + k)| over the window
          const IntVector g0 = adj_t.apply(x);
          double best = -1.0;
          for (const auto& cand : window) {
            IntVector g = g0;
            for (std::size_t i = 0; i < d; ++i) g[i] += q * cand[i];
            const double v = std::abs((*tail)(g.view()));
            if (v > best) {
              best = v;
              k = cand;
            }
          }
          if (chooser.radius > 0 &&
              std::any_of(k.begin(), k.end(), [&](const BigInt& c) { return abs(c) == BigInt(chooser.radius); })) {
            ++out.window_exhausted;
          }
        }
        const IntVector s = IntVector(x) + rt.apply(k.view());
        shifted.insert(shifted.end(), s.begin(), s.end());
        out.k_choices.emplace(KChoiceKey{IntVector(x), j + 1}, std::move(k));
      }
    }
    const DigitSet level_set = DigitSet::from_flat_unsorted(d, std::move(shifted));
    if (level_set.size() != l.size()) throw TripleInvalid("k-choices map two spectrum elements together");

    if (lambda.size() * level_set.size() > options.max_elements) {
      throw TruncationTooLarge("spectrum level exceeds the element cap");
    }
    std::size_t collisions = 0;
    lambda = minkowski_sum(lambda, transform(prefix.transpose(), level_set), &collisions);
    if (collisions != 0) throw TripleInvalid("spectrum level has colliding elements");
    out.levels.push_back(lambda);
    out.milestones.push_back(m);
    prefix = r * prefix;
    prev = m;
  }
  return out;
}

DigitSet closed_form_spectrum(const TripleSequence& seq, std::size_t n, std::size_t max_elements) {
  if (n == 0) throw InvalidArgument("closed form needs at least one level");
  const std::size_t d = seq.dim();
  DigitSet lambda = origin_set(d);
  IntMatrix p = IntMatrix::identity(d);
  for (std::size_t k = 1; k <= n; ++k) {
    const Level lv = seq.level(k);
    if (!lv.l) throw TripleInvalid("level " + std::to_string(k) + " has no spectrum set");
    if (lambda.size() * lv.l->size() > max_elements) throw TruncationTooLarge("closed form exceeds the element cap");
    lambda = minkowski_sum(lambda, transform(p.transpose(), *lv.l));
    p = lv.r * p;
  }
  return lambda;
}

std::string to_text(const SpectrumLevels& s) {
  std::ostringstream out;
  out << "# spectrum dim " << s.dim << " levels " << s.levels.size() << '\n';
  const DigitSet* prev = nullptr;
  for (std::size_t j = 0; j < s.levels.size(); ++j) {
    const DigitSet& cur = s.levels[j];
    out << "# level " << (j + 1) << " milestone " << s.milestones[j] << " size " << cur.size() << '\n';
    const DigitSet fresh = prev ? set_difference(cur, *prev) : cur;
    for (const auto& x : fresh) {
      for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i];
      out << '\n';
    }
    prev = &cur;
  }
  return out.str();
}

SpectrumLevels parse_spectrum_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SpectrumLevels s;
  bool header = false;
  std::size_t expected_levels = 0;
  std::vector<BigInt> flat;
  std::vector<std::size_t> sizes;
  std::size_t line_no = 0;
  auto close_level = [&]() {
    if (sizes.empty()) return;
    DigitSet lvl = DigitSet::from_flat_unsorted(s.dim, flat);
    if (lvl.size() != sizes.back()) {
      throw InvalidArgument("spectrum level " + std::to_string(s.levels.size() + 1) + " has the wrong size");
    }
    s.levels.push_back(std::move(lvl));
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, word;
      ls >> hash >> word;
      if (word == "spectrum") {
        std::string w1, w2;
        if (!(ls >> w1 >> s.dim >> w2 >> expected_levels) || w1 != "dim" || w2 != "levels" || s.dim == 0) {
          throw InvalidArgument("line " + std::to_string(line_no) + ": malformed spectrum header");
        }
        header = true;
      } else if (word == "level") {
        if (!header) throw InvalidArgument("line " + std::to_string(line_no) + ": level before header");
        std::size_t j = 0, m = 0, n = 0;
        std::string w1, w2;
        if (!(ls >> j >> w1 >> m >> w2 >> n) || w1 != "milestone" || w2 != "size" || j != sizes.size() + 1) {
          throw InvalidArgument("line " + std::to_string(line_no) + ": malformed level marker");
        }
        close_level();
        s.milestones.push_back(m);
        sizes.push_back(n);
      }
      continue;
    }
    if (sizes.empty()) throw InvalidArgument("line " + std::to_string(line_no) + ": vector before a level marker");
    std::string tok;
    std::size_t count = 0;
    while (ls >> tok) {
      try {
        flat.push_back(BigInt::parse(tok));
      } catch (const std::exception&) {
        throw InvalidArgument("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
      }
      ++count;
    }
    if (count != s.dim) throw InvalidArgument("line " + std::to_string(line_no) + ": wrong number of coordinates");
  }
  if (!header) throw InvalidArgument("missing spectrum header");
  close_level();
  if (s.levels.size() != expected_levels) throw InvalidArgument("level count differs from the header");
  return s;
}

double q_eval(const DiscreteMeasure& m, const DigitSet& lambda, const RatVector& xi) {
  if (lambda.empty()) return 0.0;
  if (lambda.dim() != m.dim()) throw DimensionMismatch("spectrum dimension differs from measure dimension");
  const ShiftedFourier sf(m, xi);
  double q = 0.0;
  for (const auto& l : lambda) q += std::norm(sf.at(l));
  return q;
}

ExactnessReport spectrum_exactness(const DiscreteMeasure& m, const DigitSet& lambda, double tol) {
  if (!m.uniform_weights()) throw NonUniformWeights("exactness check needs equal weights");
  if (lambda.size() != m.size()) throw SizeMismatch("spectrum size differs from the number of atoms");
  if (lambda.dim() != m.dim()) throw DimensionMismatch("spectrum dimension differs from measure dimension");
  const std::size_t n = m.size();
  std::vector<PhasePoint> atoms;
  atoms.reserve(n);
  for (const auto& a : m.atoms()) atoms.emplace_back(a.point);
  // column c holds e^{-2 pi i lambda_c . x_a} over the atoms a
  std::vector<std::complex<double>> cols(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) cols[c * n + a] = unit_phase(atoms[a].dot_mod1(lambda[c]));
  }
  const double scale = 1.0 / static_cast<double>(n);
  double dev = 0.0;
  for (std::size_t c1 = 0; c1 < n; ++c1) {
    const std::complex<double>* u = &cols[c1 * n];
    for (std::size_t c2 = c1; c2 < n; ++c2) {
      const std::complex<double>* v = &cols[c2 * n];
      double re = 0.0, im = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        re += u[a].real() * v[a].real() + u[a].imag() * v[a].imag();
        im += u[a].real() * v[a].imag() - u[a].imag() * v[a].real();
      }
      const std::complex<double> g(re * scale, im * scale);
      dev = std::max(dev, std::abs(c1 == c2 ? g - 1.0 : g));
    }
  }
  return {dev <= tol, dev};
}

TailEvaluator::TailEvaluator(const TripleSequence& seq, std::size_t start, std::size_t depth, const BigInt& q)
    : dim_(seq.dim()), start_(start) {
  if (q.sign() <= 0) throw InvalidArgument("grid denominator must be positive");
  if (seq.length()) depth = start >= *seq.length() ? 0 : std::min(depth, *seq.length() - start);
  const Rational inv_q(BigInt(1), q);
  IntMatrix p = IntMatrix::identity(dim_);
  for (std::size_t j = 1; j <= depth; ++j) {
    p = seq.matrix(start + j) * p;
    const RatMatrix inv = invert(p);
    const DigitSet b = seq.digits(start + j);
    std::vector<PhasePoint> pts;
    pts.reserve(b.size());
    double l1 = 0.0;
    for (const auto& x : b) {
      RatVector c = apply(inv, x);
      double n1 = 0.0;
      for (std::size_t i = 0; i < c.dim(); ++i) {
        n1 += std::abs(c[i].to_double());
        c[i] *= inv_q;
      }
      l1 = std::max(l1, n1);
      pts.emplace_back(c);
    }
    levels_.push_back(std::move(pts));
    l1_.push_back(l1);
  }
}

std::complex<double> TailEvaluator::eval(const std::int64_t* g) const {
  std::complex<double> prod{1.0, 0.0};
  for (const auto& pts : levels_) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& p : pts) s += unit_phase(p.dot_mod1_small(g));
    prod *= s / static_cast<double>(pts.size());
  }
  return prod;
}

std::complex<double> TailEvaluator::operator()(IntView g) const {
  if (g.size() != dim_) throw DimensionMismatch("evaluation point has the wrong dimension");
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  std::vector<std::int64_t> small(dim_);
  bool fits = true;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!g[i].is_small() || g[i].small_value() <= -kLimit || g[i].small_value() >= kLimit) {
      fits = false;
      break;
    }
    small[i] = g[i].small_value();
  }
  if (fits) return eval(small.data());
  std::complex<double> prod{1.0, 0.0};
  for (const auto& pts : levels_) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& p : pts) s += unit_phase(p.dot_mod1(g));
    prod *= s / static_cast<double>(pts.size());
  }
  return prod;
}

double cos_bound(double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi)) throw ThetaOutOfRange("theta must lie in [0, pi)");
  return std::cos(theta / 2.0);
}

ConstantBracket tail_constant_C(double eps, std::size_t terms) {
  if (!(eps > 0.0 && eps < 1.0)) throw EpsilonOutOfRange("epsilon must lie in (0, 1)");
  long double sum = 0.0L;
  long double p = 1.0L;
  for (std::size_t j = 0; j <= terms; ++j) {
    const long double h = std::sin(p / 2);
    sum += std::log1p(-2 * h * h);
    p *= eps;
  }
  // p = eps^{terms+1}; sum_{j>terms} eps^{2j} = p^2 / (1 - eps^2)
  const long double e = eps;
  const long double tail = p * p / (1.0L - e * e);
  ConstantBracket c;
  c.partial = static_cast<double>(sum);
  c.tail_bound = static_cast<double>(tail);
  c.lower = static_cast<double>(sum - tail);
  c.upper = static_cast<double>(sum);
  return c;
}

double perturbation_bound(double tv, double eps0) {
  if (!(tv >= 0.0)) throw InvalidArgument("total variation must be nonnegative");
  if (tv >= eps0) throw BoundViolation("perturbation is not smaller than the equi-positivity constant");
  return eps0 - tv;
}

Rational default_y_radius(const Rational& l) {
  if (l.sign() <= 0 || l >= Rational(1)) throw InvalidArgument("PCC level l must lie in (0, 1)");
  const Rational quarter(BigInt(1), BigInt(4));
  const Rational other = l / (Rational(4) * (Rational(1) - l));
  return std::min(quarter, other);
}

namespace {

struct Grid {
  std::vector<std::int64_t> points;  // flattened, d per point, scaled by q
  std::size_t count = 0;
};

std::int64_t to_scaled(const Rational& x, const BigInt& q) {
  const Rational s = x * Rational(q);
  if (!s.is_integer() || !s.num().is_small()) throw InvalidArgument("grid point does not fit the common denominator");
  return s.num().small_value();
}

// 1 - exp(sum_{i >= i0} ln cos eps^i)
double truncation_error(double eps, long long i0) {
  if (i0 < 1) return 1.0;
  long double sum = 0.0L;
  long double p = std::pow(static_cast<long double>(eps), static_cast<long double>(i0));
  while (p > 1e-30L) {
    const long double h = std::sin(p / 2);
    sum += std::log1p(-2 * h * h);  // ln cos p without cancellation
    p *= eps;
  }
  return static_cast<double>(-std::expm1(sum));
}

}  // namespace

EquiPositivityReport equi_positivity_scan(const TripleSequence& seq, const EquiPositivityOptions& opt) {
  if (opt.depth == 0) throw InvalidArgument("tail depth must be at least 1");
  if (opt.k_window < 0) throw InvalidArgument("k window must be nonnegative");
  if (opt.tail_starts.empty()) throw InvalidArgument("at least one tail start is required");
  if (opt.x_pitch.sign() <= 0 || opt.x_pitch > Rational(1)) throw InvalidArgument("x pitch must lie in (0, 1]");
  const Rational per_unit = Rational(1) / opt.x_pitch;
  if (!per_unit.is_integer()) throw InvalidArgument("1 / x pitch must be an integer");
  if (opt.y_radius.sign() < 0) throw InvalidArgument("y radius must be nonnegative");
  const Rational y_pitch = opt.y_pitch ? *opt.y_pitch : opt.y_radius / Rational(8);
  if (opt.y_radius.sign() > 0 && y_pitch.sign() <= 0) throw InvalidArgument("y pitch must be positive");

  const std::size_t d = seq.dim();
  EquiPositivityReport rep;
  rep.delta0 = opt.y_radius;
  rep.x_pitch = opt.x_pitch;
  rep.y_pitch = y_pitch;
  rep.k_window = opt.k_window;

  BigInt q = opt.x_pitch.den();
  auto lcm = [](const BigInt& a, const BigInt& b) { return divexact(a * b, gcd(a, b)); };
  q = lcm(q, BigInt(2));
  if (opt.y_radius.sign() > 0) q = lcm(q, y_pitch.den());
  if (!q.is_small()) throw InvalidArgument("grid denominator is too large");
  const std::int64_t qs = q.small_value();

  // x grid on [-1/2, 1/2)^d, first coordinate slowest
  const std::int64_t n_per = per_unit.num().small_value();
  Grid xs;
  {
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(n_per);
    xs.count = total;
    xs.points.resize(total * d);
    const std::int64_t step = to_scaled(opt.x_pitch, q);
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rem = t;
      for (std::size_t i = d; i-- > 0;) {
        const auto c = static_cast<std::int64_t>(rem % static_cast<std::size_t>(n_per));
        rem /= static_cast<std::size_t>(n_per);
        xs.points[t * d + i] = -qs / 2 + c * step;
      }
    }
  }
  // y sample: pitch multiples strictly inside the ball
  Grid ys;
  {
    if (opt.y_radius.sign() == 0) {
      ys.points.assign(d, 0);
      ys.count = 1;
    } else {
      const BigInt reach = (opt.y_radius / y_pitch).floor();
      const std::int64_t r = reach.small_value();
      const Rational r2 = opt.y_radius * opt.y_radius;
      const std::int64_t step = to_scaled(y_pitch, q);
      std::vector<std::int64_t> z(d, -r);
      for (;;) {
        Rational n2;
        for (std::size_t i = 0; i < d; ++i) n2 += Rational(z[i]) * Rational(z[i]);
        if (n2 * y_pitch * y_pitch < r2) {
          for (std::size_t i = 0; i < d; ++i) ys.points.push_back(z[i] * step);
          ++ys.count;
        }
        std::size_t i = d;
        bool done = true;
        while (i > 0) {
          --i;
          if (z[i] < r) {
            ++z[i];
            done = false;
            break;
          }
          z[i] = -r;
        }
        if (done) break;
      }
    }
  }
  rep.x_points = xs.count;
  rep.y_points = ys.count;

  const std::vector<IntVector> window = window_vectors(d, opt.k_window);
  std::vector<std::int64_t> window_scaled;
  for (const auto& k : window) {
    for (const auto& c : k) window_scaled.push_back(c.small_value() * qs);
  }

  bool first_tail = true;
  std::size_t min_depth = 0;
  std::vector<TailEvaluator> evaluators;
  std::vector<std::int64_t> g(d);
  for (std::size_t start : opt.tail_starts) {
    evaluators.emplace_back(seq, start, opt.depth, q);
    const TailEvaluator& ev = evaluators.back();
    TailScan ts;
    ts.start = start;
    ts.depth_used = ev.depth();
    ts.epsilon = std::numeric_limits<double>::infinity();
    min_depth = first_tail ? ev.depth() : std::min(min_depth, ev.depth());
    first_tail = false;
    for (std::size_t t = 0; t < xs.count; ++t) {
      const std::int64_t* x = &xs.points[t * d];
      const bool at_origin = std::all_of(x, x + d, [](std::int64_t v) { return v == 0; });
      const std::size_t n_cand = at_origin ? 1 : window.size();
      double best = -1.0;
      std::size_t best_k = 0;
      for (std::size_t c = 0; c < n_cand; ++c) {
        const std::int64_t* k = &window_scaled[c * d];
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < ys.count && worst > best; ++s) {
          const std::int64_t* y = &ys.points[s * d];
          for (std::size_t i = 0; i < d; ++i) g[i] = x[i] + y[i] + k[i];
          worst = std::min(worst, std::abs(ev.eval(g.data())));
        }
        if (worst > best) {
          best = worst;
          best_k = c;
        }
      }
      Witness w;
      w.x = RatVector(d);
      for (std::size_t i = 0; i < d; ++i) w.x[i] = Rational(BigInt(x[i]), q);
      w.k = window[best_k];
      w.value = best;
      if (opt.k_window > 0 &&
          std::any_of(w.k.begin(), w.k.end(), [&](const BigInt& v) { return abs(v) == BigInt(opt.k_window); })) {
        ++rep.window_exhausted;
      }
      if (best < opt.min_epsilon && !rep.failed_at) {
        rep.failed_at = w.x;
        rep.failed_start = start;
      }
      ts.epsilon = std::min(ts.epsilon, best);
      ts.witnesses.push_back(std::move(w));
    }
    rep.tails.push_back(std::move(ts));
  }
  rep.epsilon0 = std::numeric_limits<double>::infinity();
  for (const auto& ts : rep.tails) rep.epsilon0 = std::min(rep.epsilon0, ts.epsilon);
  rep.witnessed = !rep.failed_at;

  // first tail start from which every later scan picks the same witnesses
  auto same_witnesses = [](const TailScan& a, const TailScan& b) {
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
      if (a.witnesses[i].k != b.witnesses[i].k) return false;
    }
    return true;
  };
  std::size_t from = rep.tails.size() - 1;
  while (from > 0 && same_witnesses(rep.tails[from - 1], rep.tails.back())) --from;
  rep.witnesses_stable_from = rep.tails[from].start;

  std::optional<Rational> eps_q = opt.contraction ? opt.contraction : seq.declared_contractivity();
  if (opt.pcc_level && eps_q) {
    const double l = opt.pcc_level->to_double();
    const double eps = eps_q->to_double();
    ProofBound pb;
    pb.r_theta = cos_bound((1.0 - l / 2.0) * std::numbers::pi);
    pb.a = pb.r_theta / (2.0 * (2.0 + pb.r_theta));
    pb.c = tail_constant_C(eps, 60);
    const double xi_max = 0.5 + opt.y_radius.to_double() + static_cast<double>(opt.k_window);
    long long j_needed = 1;
    for (const auto& ev : evaluators) {
      const auto& l1 = ev.level_l1();
      for (std::size_t j = 1; j <= l1.size(); ++j) {
        const double s = 2.0 * std::numbers::pi * l1[j - 1] * xi_max;
        if (s <= 0.0) continue;
        const double need = static_cast<double>(j) - std::log(s) / std::log(eps);
        j_needed = std::max(j_needed, static_cast<long long>(std::ceil(need - 1e-12)));
      }
    }
    pb.j = static_cast<std::size_t>(j_needed);
    pb.bound = std::exp(pb.c.lower) * std::pow(pb.r_theta, static_cast<double>(pb.j - 1)) * pb.a;
    pb.truncation_error = truncation_error(eps, static_cast<long long>(min_depth) + 1 - j_needed);
    rep.proof = pb;
  }
  return rep;
}

}  // namespace specconv
