#include "gtank/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "gtank/errors.hpp"

namespace gtank {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(long numerator, long denominator)
    : Rational(BigInt(numerator), BigInt(denominator)) {}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("Rational: cannot parse '" + text + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw DomainError("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

namespace {

// |n/d| rounded to `bits` significant bits, as mantissa * 2^exponent.
long double round_quotient(const mpz_class& n, const mpz_class& d, int bits) {
  if (n == 0) return 0;
  mpz_class a = abs(n);
  mpz_class b = d;
  const long shift = static_cast<long>(bits + 2) -
                     (static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2)));
  if (shift >= 0) {
    a <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    b <<= static_cast<mp_bitcnt_t>(-shift);
  }
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());

  const long extra = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - bits;
  const mpz_class low = q & ((mpz_class(1) << static_cast<mp_bitcnt_t>(extra)) - 1);
  q >>= static_cast<mp_bitcnt_t>(extra);
  const mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(extra - 1);
  if (low > half || (low == half && (r != 0 || mpz_odd_p(q.get_mpz_t())))) ++q;

  // q has at most bits + 1 <= 65 bits; both halves convert exactly.
  const mpz_class q_hi = q >> 32;
  const mpz_class q_lo = q & 0xFFFFFFFFUL;
  const long double mantissa = std::ldexp(static_cast<long double>(q_hi.get_d()), 32) + q_lo.get_d();
  const long double v = std::ldexp(mantissa, static_cast<int>(extra - shift));
  return n < 0 ? -v : v;
}

}  // namespace

double Rational::to_double() const {
  return static_cast<double>(round_quotient(value_.get_num(), value_.get_den(), 53));
}

long double Rational::to_long_double() const {
  return round_quotient(value_.get_num(), value_.get_den(), std::numeric_limits<long double>::digits);
}

std::string Rational::str() const { return value_.get_str(); }

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  return Rational(pow(base.numerator(), exponent), pow(base.denominator(), exponent));
}

}  // namespace gtank
