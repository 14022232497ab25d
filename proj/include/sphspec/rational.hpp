#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sphspec {

/// Arbitrary-precision integer. Thin value wrapper over mpz_class.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit by design of the numeric tower
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  static BigInt parse(std::string_view text);

  const mpz_class& raw() const { return v_; }
  mpz_class& raw() { return v_; }

  std::string to_string() const { return v_.get_str(); }
  int sign() const { return sgn(v_); }
  bool fits_int64() const { return v_.fits_slong_p(); }
  std::int64_t to_int64() const;

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator-(const BigInt& a) { return BigInt(mpz_class(-a.v_)); }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  mpz_class v_;
};

/// Exact rational in canonical form (gcd 1, positive denominator).
/// Division by zero throws PoleError instead of trapping inside GMP.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit integer promotion
  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class v);

  /// Accepts "p", "p/q", with optional sign.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }

  BigInt num() const { return BigInt(mpz_class(v_.get_num())); }
  BigInt den() const { return BigInt(mpz_class(v_.get_den())); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  /// Always "num/den", also for integers.
  std::string to_string() const;

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const;
  Rational pow(unsigned e) const;

  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  mpq_class v_;
};

}  // namespace sphspec
