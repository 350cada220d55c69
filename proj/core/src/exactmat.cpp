#include "specconv/exactmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specconv {

RatVector to_rational(IntView v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = Rational(m(i, j));
  }
  return r;
}

RatVector apply(const RatMatrix& m, IntView v) {
  if (v.size() != m.dim()) throw DimensionMismatch("matrix/vector dimensions differ");
  RatVector r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Rational acc;
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (!v[j].is_zero() && !m(i, j).is_zero()) acc += m(i, j) * Rational(v[j]);
    }
    r[i] = std::move(acc);
  }
  return r;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector dimensions differ");
  Rational acc;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

Rational dot(const RatVector& a, IntView b) {
  if (a.dim() != b.size()) throw DimensionMismatch("vector dimensions differ");
  Rational acc;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!b[i].is_zero()) acc += a[i] * Rational(b[i]);
  }
  return acc;
}

Rational squared_norm(const RatVector& v) { return dot(v, v); }

BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return BigInt(1);
  IntMatrix a = m;
  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return BigInt(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = divexact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      }
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

RatMatrix invert(const RatMatrix& m) {
  const std::size_t n = m.dim();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

RatMatrix invert(const IntMatrix& m) {
  if (m.is_diagonal()) {
    RatMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (m(i, i).is_zero()) throw SingularMatrix("matrix is singular");
      r(i, i) = Rational(BigInt(1), m(i, i));
    }
    return r;
  }
  return invert(to_rational(m));
}

IntMatrix adjugate(const IntMatrix& m) {
  const BigInt det = determinant(m);
  if (det.is_zero()) {
    // Cofactor expansion; only needed for singular inputs.
    const std::size_t n = m.dim();
    IntMatrix adj(n);
    if (n == 1) {
      adj(0, 0) = BigInt(1);
      return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1);
        for (std::size_t r = 0, mr = 0; r < n; ++r) {
          if (r == j) continue;
          for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == i) continue;
            minor(mr, mc++) = m(r, c);
          }
          ++mr;
        }
        const BigInt cof = determinant(minor);
        adj(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
      }
    }
    return adj;
  }
  const RatMatrix inv = invert(m);
  IntMatrix adj(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Rational v = inv(i, j) * Rational(det);
      adj(i, j) = v.num();
    }
  }
  return adj;
}

IntMatrix product_range(std::span<const IntMatrix> factors, std::size_t p, std::size_t q) {
  if (!(p < q) || q > factors.size()) {
    throw IndexOutOfRange("product_range requires p < q <= available length (p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ", length=" + std::to_string(factors.size()) + ")");
  }
  IntMatrix acc = factors[p];  // R_{p+1}
  for (std::size_t k = p + 1; k < q; ++k) acc = factors[k] * acc;
  return acc;
}

namespace {

// Exact test: is t*I - a positive definite? (a symmetric)
bool shifted_positive_definite(const RatMatrix& a, const Rational& t) {
  const std::size_t n = a.dim();
  RatMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s(i, j) = (i == j ? t : Rational(0)) - a(i, j);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (s(k, k).sign() <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k).is_zero()) continue;
      const Rational f = s(i, k) / s(k, k);
      for (std::size_t j = k; j < n; ++j) s(i, j) -= f * s(k, j);
    }
  }
  return true;
}

double sqrt_up(const Rational& v) {
  double r = std::sqrt(std::max(0.0, v.to_double()));
  if (v.is_zero()) return 0.0;
  r = std::nextafter(r, std::numeric_limits<double>::infinity());
  return std::nextafter(r, std::numeric_limits<double>::infinity());
}

double sqrt_down(const Rational& v) {
  double r = std::sqrt(std::max(0.0, v.to_double()));
  if (r == 0.0) return 0.0;
  r = std::nextafter(r, 0.0);
  return std::nextafter(r, 0.0);
}

}  // namespace

NormBracket spectral_norm_bracket(const RatMatrix& m, double tol) {
  const std::size_t n = m.dim();
  RatMatrix a(n);  // m^T m
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational acc;
      for (std::size_t k = 0; k < n; ++k) acc += m(k, i) * m(k, j);
      a(i, j) = acc;
      a(j, i) = acc;
    }
  }
  Rational lo;
  Rational trace;
  Rational gersh;
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) > lo) lo = a(i, i);
    trace += a(i, i);
    Rational row;
    for (std::size_t j = 0; j < n; ++j) row += abs(a(i, j));
    if (row > gersh) gersh = row;
  }
  Rational hi = trace < gersh ? trace : gersh;

  NormBracket out;
  const double half_tol = tol / 2;
  while (lo < hi && out.iterations < 400) {
    if (sqrt_up(hi) - sqrt_down(lo) <= half_tol) break;
    Rational mid = (lo + hi) / Rational(2);
    if (shifted_positive_definite(a, mid)) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
    ++out.iterations;
  }
  out.lower = sqrt_down(lo);
  out.upper = sqrt_up(hi);
  out.lower_sq = std::move(lo);
  out.upper_sq = std::move(hi);
  return out;
}

double spectral_norm_upper(const RatMatrix& m, double tol) { return spectral_norm_bracket(m, tol).upper; }

std::vector<Rational> characteristic_polynomial(const RatMatrix& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = m.dim();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  RatMatrix mk(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    const RatMatrix am = m * next;
    Rational tr;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
    mk = std::move(next);
  }
  return c;
}

bool roots_in_open_unit_disk(std::vector<Rational> p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.empty()) throw InvalidArgument("zero polynomial has no well-defined roots");
  while (p.size() > 1) {
    const std::size_t n = p.size() - 1;
    const Rational a0 = p[0];
    const Rational an = p[n];
    if (abs(a0) >= abs(an)) return false;
    // T p(z) = (a_n p(z) - a_0 p*(z)) / z, real coefficients.
    std::vector<Rational> q(n);
    for (std::size_t k = 1; k <= n; ++k) q[k - 1] = an * p[k] - a0 * p[n - k];
    const Rational lead = q.back();
    for (auto& x : q) x /= lead;
    p = std::move(q);
  }
  return true;
}

namespace {

// All |root| > rho for rho > 0: roots of x^n chi(rho / x) lie inside the unit disk.
bool all_moduli_above(const std::vector<Rational>& chi, const Rational& rho) {
  const std::size_t n = chi.size() - 1;
  std::vector<Rational> rev(n + 1);
  Rational power(1);
  for (std::size_t k = 0; k <= n; ++k) {
    rev[n - k] = chi[k] * power;  // chi(rho z) has coefficient c_k rho^k on z^k
    power *= rho;
  }
  if (rev.back().is_zero()) return false;
  return roots_in_open_unit_disk(rev);
}

// All |root| < rho: roots of chi(rho z) inside the unit disk.
bool all_moduli_below(const std::vector<Rational>& chi, const Rational& rho) {
  std::vector<Rational> scaled(chi.size());
  Rational power(1);
  for (std::size_t k = 0; k < chi.size(); ++k) {
    scaled[k] = chi[k] * power;
    power *= rho;
  }
  return roots_in_open_unit_disk(scaled);
}

template <class Pred>
ModulusInterval bisect_modulus(Rational lo, Rational hi, double tol, Pred above_is_true_at) {
  // Invariant: predicate(lo) and !predicate(hi) for "min modulus" (monotone decreasing).
  for (int it = 0; it < 200 && (hi - lo).to_double() > tol; ++it) {
    Rational mid = (lo + hi) / Rational(2);
    if (above_is_true_at(mid)) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return {lo.to_double(), hi.to_double()};
}

}  // namespace

ExpansiveCertificate expansive_check(const IntMatrix& m, double tol) {
  ExpansiveCertificate cert;
  const std::size_t n = m.dim();
  if (n == 0) throw InvalidArgument("empty matrix");
  const RatMatrix rm = to_rational(m);
  if (m.is_upper_triangular() || m.is_lower_triangular()) {
    cert.method = "triangular";
    BigInt lo = abs(m(0, 0));
    BigInt hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      const BigInt v = abs(m(i, i));
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    cert.min_modulus = {lo.to_double(), lo.to_double()};
    cert.max_modulus = {hi.to_double(), hi.to_double()};
    cert.characteristic_polynomial = characteristic_polynomial(rm);
    cert.status = lo > BigInt(1) ? ExpansiveStatus::expansive : ExpansiveStatus::not_expansive;
    return cert;
  }
  if (n > 4) {
    throw DimensionUnsupported("expansiveness check supports d <= 4 or triangular matrices (d=" + std::to_string(n) +
                               "); status unverified");
  }
  cert.method = "schur-cohn";
  const std::vector<Rational> chi = characteristic_polynomial(rm);
  cert.characteristic_polynomial = chi;
  // Cauchy bound on root moduli of a monic polynomial.
  Rational bound(1);
  for (std::size_t k = 0; k + 1 < chi.size(); ++k) {
    if (abs(chi[k]) + Rational(1) > bound) bound = abs(chi[k]) + Rational(1);
  }
  if (chi[0].is_zero()) {
    cert.min_modulus = {0.0, 0.0};
  } else {
    cert.min_modulus = bisect_modulus(Rational(0), bound, tol, [&](const Rational& rho) {
      return rho.is_zero() || all_moduli_above(chi, rho);
    });
  }
  cert.max_modulus = bisect_modulus(Rational(0), bound, tol, [&](const Rational& rho) {
    return rho.is_zero() || !all_moduli_below(chi, rho);
  });
  cert.status = (!chi[0].is_zero() && all_moduli_above(chi, Rational(1))) ? ExpansiveStatus::expansive
                                                                           : ExpansiveStatus::not_expansive;
  return cert;
}

std::string to_string(IntView v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace specconv
