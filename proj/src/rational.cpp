#include "sphspec/rational.hpp"

#include <cctype>

#include "sphspec/errors.hpp"

namespace sphspec {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_mpz(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw StructuralError("not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

BigInt BigInt::parse(std::string_view text) { return BigInt(parse_mpz(text)); }

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw DomainError("integer does not fit in 64 bits: " + to_string());
  return v_.get_si();
}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.sign() == 0) throw PoleError("rational with zero denominator");
  v_ = mpq_class(num.raw(), den.raw());
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
  if (sgn(v_.get_den()) == 0) throw PoleError("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(BigInt(parse_mpz(text)), BigInt(1));
  return Rational(BigInt(parse_mpz(text.substr(0, slash))),
                  BigInt(parse_mpz(text.substr(slash + 1))));
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw PoleError("inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class& n = v_.get_num();
  const mpz_class& d = v_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PoleError("division by zero");
  v_ /= o.v_;
  return *this;
}

}  // namespace sphspec
