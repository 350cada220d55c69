#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace specconv {

/// Arbitrary-precision signed integer.
///
/// Values that fit in an int64 are stored inline; anything larger lives in a
/// heap-allocated GMP integer. The representation is normalized: the heap form
/// is used only when the value does not fit in 64 bits, so equality of the
/// small parts is value equality.
class BigInt {
 public:
  BigInt() noexcept = default;

  template <std::signed_integral T>
  BigInt(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}  // NOLINT

  template <std::unsigned_integral T>
  BigInt(T v) {  // NOLINT
    if (static_cast<unsigned long long>(v) <= static_cast<unsigned long long>(INT64_MAX)) {
      small_ = static_cast<std::int64_t>(v);
    } else {
      big_ = std::make_unique<mpz_class>();
      mpz_set_ui(big_->get_mpz_t(), static_cast<unsigned long>(v));
    }
  }

  explicit BigInt(const mpz_class& v);
  explicit BigInt(mpz_class&& v);
  static BigInt from_i128(__int128 v);

  /// Parses an optionally signed decimal integer. Throws std::invalid_argument.
  static BigInt parse(std::string_view text);

  BigInt(const BigInt& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
  BigInt(BigInt&&) noexcept = default;
  BigInt& operator=(const BigInt& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  BigInt& operator=(BigInt&&) noexcept = default;
  ~BigInt() = default;

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  /// Only meaningful when is_small().
  [[nodiscard]] std::int64_t small_value() const noexcept { return small_; }
  [[nodiscard]] mpz_class to_mpz() const;
  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;
  /// Number of bits in |value| (0 for zero).
  [[nodiscard]] std::size_t bit_length() const;

  BigInt operator-() const;
  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

  friend bool operator==(const BigInt& a, const BigInt& b) noexcept;
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) noexcept;

  friend BigInt abs(const BigInt& a);
  /// Quotient rounded toward negative infinity. Throws std::domain_error on b == 0.
  friend BigInt floor_div(const BigInt& a, const BigInt& b);
  /// a - b * floor_div(a, b); has the sign of b.
  friend BigInt floor_mod(const BigInt& a, const BigInt& b);
  /// a / b when b divides a exactly.
  friend BigInt divexact(const BigInt& a, const BigInt& b);
  /// Non-negative gcd; gcd(0, 0) = 0.
  friend BigInt gcd(const BigInt& a, const BigInt& b);
  friend BigInt pow(const BigInt& base, unsigned exponent);
  friend BigInt factorial(unsigned n);

  friend std::ostream& operator<<(std::ostream& os, const BigInt& v);

 private:
  static BigInt normalized(mpz_class&& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

BigInt abs(const BigInt& a);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_mod(const BigInt& a, const BigInt& b);
BigInt divexact(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned exponent);
BigInt factorial(unsigned n);

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : num_(v) {}  // NOLINT
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT
  Rational(BigInt n, BigInt d);
  explicit Rational(const mpq_class& q);

  /// Accepts "p", "p/q" and plain decimals such as "-0.125". Throws std::invalid_argument.
  static Rational parse(std::string_view text);
  /// Exact value of a finite double.
  static Rational from_double(double v);

  [[nodiscard]] const BigInt& num() const noexcept { return num_; }
  [[nodiscard]] const BigInt& den() const noexcept { return den_; }
  [[nodiscard]] bool is_integer() const noexcept { return den_.is_small() && den_.small_value() == 1; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] int sign() const noexcept { return num_.sign(); }
  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] double to_double() const;
  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] BigInt floor() const;
  /// this - floor(this), in [0, 1).
  [[nodiscard]] Rational frac() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational abs(const Rational& a);
  friend std::ostream& operator<<(std::ostream& os, const Rational& v);

 private:
  struct Raw {};
  Rational(BigInt n, BigInt d, Raw) : num_(std::move(n)), den_(std::move(d)) {}
  void assign_mpq(const mpq_class& q);

  BigInt num_{0};
  BigInt den_{1};
};

}  // namespace specconv
