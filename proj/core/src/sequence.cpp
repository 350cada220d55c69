#include "specconv/sequence.hpp"

#include <memory>

namespace specconv {

TripleSequence::TripleSequence(Source src) : src_(std::move(src)) {
  if (src_.dim == 0) throw InvalidArgument("sequence dimension must be positive");
  if (!src_.matrix || !src_.digits) throw InvalidArgument("sequence source needs matrix and digit generators");
  if (!src_.spectrum) src_.spectrum = [](std::size_t) { return std::optional<DigitSet>{}; };
}

TripleSequence TripleSequence::from_levels(std::vector<Level> levels, std::string name) {
  if (levels.empty()) throw InvalidArgument("explicit sequence needs at least one level");
  auto shared = std::make_shared<const std::vector<Level>>(std::move(levels));
  Source src;
  src.dim = (*shared)[0].r.dim();
  src.matrix = [shared](std::size_t k) { return (*shared)[k - 1].r; };
  src.digits = [shared](std::size_t k) { return (*shared)[k - 1].b; };
  src.spectrum = [shared](std::size_t k) { return (*shared)[k - 1].l; };
  src.length = shared->size();
  src.name = std::move(name);
  return TripleSequence(std::move(src));
}

void TripleSequence::check_index(std::size_t k) const {
  if (!has_level(k)) {
    throw IndexOutOfRange("level " + std::to_string(k) + " outside sequence '" + src_.name + "'" +
                          (src_.length ? " of length " + std::to_string(*src_.length) : std::string()));
  }
}

IntMatrix TripleSequence::matrix(std::size_t k) const {
  check_index(k);
  IntMatrix r = src_.matrix(k);
  if (r.dim() != src_.dim) throw InvalidLevel("R_" + std::to_string(k) + " has the wrong dimension");
  if (determinant(r).is_zero()) throw InvalidLevel("R_" + std::to_string(k) + " is singular");
  return r;
}

DigitSet TripleSequence::digits(std::size_t k) const {
  check_index(k);
  DigitSet b = src_.digits(k);
  if (b.dim() != src_.dim) throw InvalidLevel("B_" + std::to_string(k) + " has the wrong dimension");
  if (b.size() < (allow_degenerate_ ? 1u : 2u)) {
    throw InvalidLevel("B_" + std::to_string(k) + " needs at least two elements");
  }
  return b;
}

std::optional<DigitSet> TripleSequence::spectrum(std::size_t k) const {
  check_index(k);
  auto l = src_.spectrum(k);
  if (l && l->dim() != src_.dim) throw InvalidLevel("L_" + std::to_string(k) + " has the wrong dimension");
  return l;
}

Level TripleSequence::level(std::size_t k) const { return Level{matrix(k), digits(k), spectrum(k)}; }

IntMatrix TripleSequence::product_range(std::size_t p, std::size_t q) const {
  if (!(p < q) || (src_.length && q > *src_.length)) {
    throw IndexOutOfRange("product_range requires 0 <= p < q <= length (p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
  }
  IntMatrix acc = matrix(p + 1);
  for (std::size_t k = p + 2; k <= q; ++k) acc = matrix(k) * acc;
  return acc;
}

TripleSequence& TripleSequence::set_declared_contractivity(std::optional<Rational> c) {
  if (c && (c->sign() <= 0 || *c >= Rational(1))) {
    throw InvalidArgument("declared contractivity must lie in (0, 1)");
  }
  contractivity_ = std::move(c);
  return *this;
}

TripleSequence& TripleSequence::set_tail_bounds(SeriesTailBounds t) {
  tails_ = std::move(t);
  return *this;
}

TripleSequence& TripleSequence::allow_degenerate(bool allow) {
  allow_degenerate_ = allow;
  return *this;
}

}  // namespace specconv
