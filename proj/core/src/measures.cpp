#include "specconv/measures.hpp"

#include <algorithm>
#include <sstream>

namespace specconv {

DiscreteMeasure DiscreteMeasure::point_mass(RatVector x) {
  DiscreteMeasure m;
  m.dim_ = x.dim();
  m.atoms_.push_back(Atom{std::move(x), Rational(1)});
  return m;
}

DiscreteMeasure DiscreteMeasure::merged(std::size_t dim, std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
  DiscreteMeasure m;
  m.dim_ = dim;
  m.atoms_.reserve(atoms.size());
  for (auto& a : atoms) {
    if (!m.atoms_.empty() && m.atoms_.back().point == a.point) {
      m.atoms_.back().weight += a.weight;
    } else {
      m.atoms_.push_back(std::move(a));
    }
  }
  return m;
}

DiscreteMeasure DiscreteMeasure::from_atoms(std::size_t dim, std::vector<Atom> atoms) {
  if (atoms.empty()) throw EmptySet("measure needs at least one atom");
  for (const auto& a : atoms) {
    if (a.point.dim() != dim) throw DimensionMismatch("atom dimension differs from measure dimension");
    if (a.weight.sign() <= 0) throw InvalidArgument("atom weights must be positive");
  }
  DiscreteMeasure m = merged(dim, std::move(atoms));
  if (m.total_mass() != Rational(1)) throw InvalidArgument("weights must sum to 1, got " + m.total_mass().to_string());
  return m;
}

Rational DiscreteMeasure::total_mass() const {
  Rational s;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

bool DiscreteMeasure::uniform_weights() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.weight == atoms_.front().weight; });
}

DiscreteMeasure uniform_on(const DigitSet& a, const RatMatrix& map) {
  if (a.empty()) throw EmptySet("uniform measure on an empty set");
  if (map.dim() != a.dim()) throw DimensionMismatch("map and digit set dimensions differ");
  const Rational w(BigInt(1), BigInt(static_cast<std::uint64_t>(a.size())));
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(a.size());
  for (const auto& b : a) atoms.push_back({apply(map, b), w});
  return DiscreteMeasure::merged(a.dim(), std::move(atoms));
}

DiscreteMeasure convolve(const DiscreteMeasure& m1, const DiscreteMeasure& m2, std::size_t max_atoms) {
  if (m1.dim() != m2.dim()) throw DimensionMismatch("cannot convolve measures of different dimension");
  if (m2.size() != 0 && m1.size() > max_atoms / m2.size()) {
    throw TruncationTooLarge("convolution would produce " + std::to_string(m1.size()) + " x " +
                             std::to_string(m2.size()) + " atoms, cap is " + std::to_string(max_atoms));
  }
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(m1.size() * m2.size());
  for (const auto& a : m1.atoms()) {
    for (const auto& b : m2.atoms()) atoms.push_back({a.point + b.point, a.weight * b.weight});
  }
  return DiscreteMeasure::merged(m1.dim(), std::move(atoms));
}

namespace {

void check_projected_atoms(const TripleSequence& seq, std::size_t from, std::size_t to, std::size_t max_atoms) {
  std::size_t projected = 1;
  for (std::size_t j = from; j <= to; ++j) {
    const std::size_t n = seq.digits(j).size();
    if (projected > max_atoms / n) {
      throw TruncationTooLarge("truncation of levels " + std::to_string(from) + ".." + std::to_string(to) +
                               " exceeds the atom cap " + std::to_string(max_atoms));
    }
    projected *= n;
  }
}

DiscreteMeasure convolve_levels(const TripleSequence& seq, std::size_t from, std::size_t to, std::size_t max_atoms) {
  check_projected_atoms(seq, from, to, max_atoms);
  DiscreteMeasure acc = DiscreteMeasure::point_mass(RatVector(seq.dim()));
  IntMatrix product = IntMatrix::identity(seq.dim());
  for (std::size_t j = from; j <= to; ++j) {
    product = seq.matrix(j) * product;
    acc = convolve(acc, uniform_on(seq.digits(j), invert(product)), max_atoms);
  }
  return acc;
}

}  // namespace

DiscreteMeasure mu_truncate(const TripleSequence& seq, std::size_t k, std::size_t max_atoms) {
  if (k == 0) throw IndexOutOfRange("mu_truncate needs k >= 1");
  return convolve_levels(seq, 1, k, max_atoms);
}

TailTruncation nu_tail_truncate(const TripleSequence& seq, std::size_t k, std::size_t depth, std::size_t max_atoms) {
  if (depth == 0) throw InvalidArgument("tail truncation depth must be at least 1");
  return TailTruncation{k, depth, convolve_levels(seq, k + 1, k + depth, max_atoms)};
}

std::complex<double> fourier(const DiscreteMeasure& m, const RatVector& xi) {
  if (xi.dim() != m.dim()) throw DimensionMismatch("frequency dimension differs from measure dimension");
  if (xi.is_zero()) return {1.0, 0.0};
  std::complex<double> s{0.0, 0.0};
  for (const auto& a : m.atoms()) s += a.weight.to_double() * unit_phase(frac_to_double(dot(xi, a.point)));
  return s;
}

std::complex<double> mask(const DigitSet& b, const PhasePoint& xi) {
  if (b.empty()) throw EmptySet("mask of an empty digit set");
  if (xi.dim() != b.dim()) throw DimensionMismatch("frequency dimension differs from digit dimension");
  std::complex<double> s{0.0, 0.0};
  if (b.small_coordinates()) {
    for (const auto& d : b) s += unit_phase(xi.dot_mod1_small(d));
  } else {
    for (const auto& d : b) s += unit_phase(xi.dot_mod1(d));
  }
  return s / static_cast<double>(b.size());
}

std::complex<double> mask(const DigitSet& b, const RatVector& xi) { return mask(b, PhasePoint(xi)); }

std::complex<double> tail_fourier_product(const TripleSequence& seq, std::size_t k, std::size_t depth,
                                          const RatVector& xi) {
  if (depth == 0) throw InvalidArgument("tail product depth must be at least 1");
  std::complex<double> p{1.0, 0.0};
  RatVector xj = xi;
  for (std::size_t j = 0; j < depth; ++j) {
    const std::size_t level = k + 1 + j;
    xj = invert(seq.matrix(level)).transpose().apply(xj);
    p *= mask(seq.digits(level), xj);
  }
  return p;
}

ShiftedFourier::ShiftedFourier(const DiscreteMeasure& m, const RatVector& xi) : dim_(m.dim()) {
  if (xi.dim() != m.dim()) throw DimensionMismatch("frequency dimension differs from measure dimension");
  atoms_.reserve(m.size());
  base_.reserve(m.size());
  weights_.reserve(m.size());
  for (const auto& a : m.atoms()) {
    atoms_.emplace_back(a.point);
    base_.push_back(frac_to_double(dot(xi, a.point)));
    weights_.push_back(a.weight.to_double());
  }
}

std::complex<double> ShiftedFourier::at(IntView lambda) const {
  if (lambda.size() != dim_) throw DimensionMismatch("shift dimension differs from measure dimension");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    s += weights_[j] * unit_phase(base_[j] + atoms_[j].dot_mod1(lambda));
  }
  return s;
}

std::string to_csv(const DiscreteMeasure& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.dim(); ++i) out << 'x' << (i + 1) << ',';
  out << "weight\n";
  for (const auto& a : m.atoms()) {
    for (const auto& x : a.point) out << x.to_string() << ',';
    out << a.weight.to_string() << '\n';
  }
  return out.str();
}

}  // namespace specconv
