#include "specconv/bigint.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace specconv {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

bool fits_i64(i128 v) {
  return v >= static_cast<i128>(std::numeric_limits<std::int64_t>::min()) &&
         v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
}

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

mpz_class mpz_from_i64(std::int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// BigInt

BigInt::BigInt(const mpz_class& v) : BigInt(mpz_class(v)) {}

BigInt::BigInt(mpz_class&& v) { *this = normalized(std::move(v)); }

BigInt BigInt::normalized(mpz_class&& v) {
  BigInt r;
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    r.small_ = mpz_get_si(v.get_mpz_t());
  } else {
    r.big_ = std::make_unique<mpz_class>(std::move(v));
  }
  return r;
}

BigInt BigInt::from_i128(__int128 v) {
  if (fits_i64(v)) return BigInt(static_cast<std::int64_t>(v));
  const u128 mag = uabs(v);
  mpz_class hi;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(mag >> 64));
  mpz_class lo;
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(mag & ~std::uint64_t{0}));
  mpz_class r = (hi << 64) + lo;
  if (v < 0) r = -r;
  return normalized(std::move(r));
}

BigInt BigInt::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  mpz_class v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("malformed integer literal: " + s);
  return normalized(std::move(v));
}

mpz_class BigInt::to_mpz() const { return big_ ? *big_ : mpz_from_i64(small_); }

int BigInt::sign() const noexcept {
  if (big_) return mpz_sgn(big_->get_mpz_t());
  return (small_ > 0) - (small_ < 0);
}

double BigInt::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

std::string BigInt::to_string() const { return big_ ? big_->get_str(10) : std::to_string(small_); }

std::size_t BigInt::bit_length() const {
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  if (small_ == 0) return 0;
  const std::uint64_t m = small_ < 0 ? static_cast<std::uint64_t>(-(small_ + 1)) + 1 : static_cast<std::uint64_t>(small_);
  return 64 - static_cast<std::size_t>(__builtin_clzll(m));
}

BigInt BigInt::operator-() const {
  if (!big_) {
    if (small_ != std::numeric_limits<std::int64_t>::min()) return BigInt(-small_);
    return from_i128(-static_cast<i128>(small_));
  }
  return normalized(-*big_);
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return *this = from_i128(static_cast<i128>(small_) + o.small_);
  }
  return *this = normalized(to_mpz() + o.to_mpz());
}

BigInt& BigInt::operator-=(const BigInt& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return *this = from_i128(static_cast<i128>(small_) - o.small_);
  }
  return *this = normalized(to_mpz() - o.to_mpz());
}

BigInt& BigInt::operator*=(const BigInt& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return *this = from_i128(static_cast<i128>(small_) * o.small_);
  }
  return *this = normalized(to_mpz() * o.to_mpz());
}

bool operator==(const BigInt& a, const BigInt& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return mpz_cmp(a.big_->get_mpz_t(), b.big_->get_mpz_t()) == 0;
  return false;  // normalized: a small and a big value never coincide
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c;
  if (a.big_ && b.big_) {
    c = mpz_cmp(a.big_->get_mpz_t(), b.big_->get_mpz_t());
  } else if (a.big_) {
    c = mpz_cmp_si(a.big_->get_mpz_t(), static_cast<long>(b.small_));
  } else {
    c = -mpz_cmp_si(b.big_->get_mpz_t(), static_cast<long>(a.small_));
  }
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigInt abs(const BigInt& a) { return a.sign() < 0 ? -a : a; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.small_value();
    const std::int64_t y = b.small_value();
    if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1)) {
      std::int64_t q = x / y;
      if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
      return BigInt(q);
    }
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt::normalized(std::move(q));
}

BigInt floor_mod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.small_value();
    const std::int64_t y = b.small_value();
    if (y == -1) return BigInt(0);
    std::int64_t r = x % y;
    if (r != 0 && ((r < 0) != (y < 0))) r += y;
    return BigInt(r);
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt::normalized(std::move(r));
}

BigInt divexact(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.small_value();
    const std::int64_t y = b.small_value();
    if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1)) return BigInt(x / y);
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt::normalized(std::move(q));
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  if (a.is_small() && b.is_small()) {
    return BigInt::from_i128(static_cast<i128>(gcd_u128(uabs(a.small_value()), uabs(b.small_value()))));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt::normalized(std::move(g));
}

BigInt pow(const BigInt& base, unsigned exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.to_mpz().get_mpz_t(), exponent);
  return BigInt::normalized(std::move(r));
}

BigInt factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return BigInt::normalized(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt n, BigInt d) {
  if (d.is_zero()) throw std::domain_error("rational with zero denominator");
  if (n.is_small() && d.is_small()) {
    i128 x = n.small_value();
    i128 y = d.small_value();
    if (y < 0) {
      x = -x;
      y = -y;
    }
    const u128 g = gcd_u128(uabs(x), static_cast<u128>(y));
    if (g > 1) {
      x /= static_cast<i128>(g);
      y /= static_cast<i128>(g);
    }
    num_ = BigInt::from_i128(x);
    den_ = BigInt::from_i128(y);
    return;
  }
  mpq_class q(n.to_mpz(), d.to_mpz());
  q.canonicalize();
  assign_mpq(q);
}

Rational::Rational(const mpq_class& q) { assign_mpq(q); }

void Rational::assign_mpq(const mpq_class& q) {
  num_ = BigInt(q.get_num());
  den_ = BigInt(q.get_den());
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Rational(BigInt::parse(s.substr(0, slash)), BigInt::parse(s.substr(slash + 1)));
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt::parse(s));
  const std::string whole = s.substr(0, dot);
  const std::string frac = s.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  const bool negative = !whole.empty() && whole[0] == '-';
  const std::string digits = (whole == "-" || whole == "+" || whole.empty()) ? std::string("0") : whole;
  BigInt w = BigInt::parse(digits);
  const BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt f = BigInt::parse(frac);
  if (negative) f = -f;
  return Rational(w * scale + f, scale);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double m = std::frexp(v, &exp);  // v = m * 2^exp, 0.5 <= |m| < 1
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  const int shift = exp - 53;
  if (shift >= 0) return Rational(BigInt(mant) * pow(BigInt(2), static_cast<unsigned>(shift)));
  return Rational(BigInt(mant), pow(BigInt(2), static_cast<unsigned>(-shift)));
}

mpq_class Rational::to_mpq() const {
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), num_.to_mpz().get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den_.to_mpz().get_mpz_t());
  return q;
}

double Rational::to_double() const {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (num_.is_small() && den_.is_small()) {
    const std::int64_t n = num_.small_value();
    const std::int64_t d = den_.small_value();
    if (n > -kExact && n < kExact && d < kExact) {
      return static_cast<double>(n) / static_cast<double>(d);
    }
  }
  return to_mpq().get_d();
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

BigInt Rational::floor() const { return floor_div(num_, den_); }

Rational Rational::frac() const { return Rational(floor_mod(num_, den_), den_, Raw{}); }

Rational Rational::operator-() const { return Rational(-num_, den_, Raw{}); }

Rational& Rational::operator+=(const Rational& o) {
  if (num_.is_small() && den_.is_small() && o.num_.is_small() && o.den_.is_small()) {
    const i128 n = static_cast<i128>(num_.small_value()) * o.den_.small_value() +
                   static_cast<i128>(o.num_.small_value()) * den_.small_value();
    const i128 d = static_cast<i128>(den_.small_value()) * o.den_.small_value();
    const u128 g = gcd_u128(uabs(n), static_cast<u128>(d));
    const i128 rn = n / static_cast<i128>(g);
    const i128 rd = d / static_cast<i128>(g);
    num_ = BigInt::from_i128(rn);
    den_ = BigInt::from_i128(rd);
    return *this;
  }
  assign_mpq(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (num_.is_small() && den_.is_small() && o.num_.is_small() && o.den_.is_small()) {
    const i128 a = num_.small_value();
    const i128 b = den_.small_value();
    const i128 c = o.num_.small_value();
    const i128 d = o.den_.small_value();
    const auto g1 = static_cast<i128>(gcd_u128(uabs(a), uabs(d)));
    const auto g2 = static_cast<i128>(gcd_u128(uabs(c), uabs(b)));
    const i128 n = (g1 ? a / g1 : a) * (g2 ? c / g2 : c);
    const i128 m = (g2 ? b / g2 : b) * (g1 ? d / g1 : d);
    if (n == 0) {
      num_ = BigInt(0);
      den_ = BigInt(1);
    } else {
      num_ = BigInt::from_i128(n);
      den_ = BigInt::from_i128(m);
    }
    return *this;
  }
  assign_mpq(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  Rational inv = o.sign() < 0 ? Rational(-o.den_, -o.num_, Raw{}) : Rational(o.den_, o.num_, Raw{});
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.num_.is_small() && a.den_.is_small() && b.num_.is_small() && b.den_.is_small()) {
    const i128 l = static_cast<i128>(a.num_.small_value()) * b.den_.small_value();
    const i128 r = static_cast<i128>(b.num_.small_value()) * a.den_.small_value();
    return l <=> r;
  }
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

}  // namespace specconv
