#include "gtank/asymptotics.hpp"

#include <cmath>
#include <string>

#include "gtank/errors.hpp"

namespace gtank {
namespace {

using ul = unsigned long;

Rational power(long x, long e) {
  if (e < 0) return 0;  // only ever reached with a zero coefficient
  return Rational(pow(BigInt(x), static_cast<ul>(e)));
}

// f(x) = x^w - c x^y and its derivatives at an integer point.
Rational f(const PowerSumSpec& s, long x) { return power(x, s.w) - s.c * power(x, s.y); }

Rational f1(const PowerSumSpec& s, long x) {
  return Rational(s.w) * power(x, s.w - 1) - s.c * Rational(s.y) * power(x, s.y - 1);
}

long double f1_real(const PowerSumSpec& s, long double x) {
  const long double c = s.c.to_long_double();
  long double v = 0;
  if (s.w >= 1) v += s.w * std::pow(x, static_cast<long double>(s.w - 1));
  if (s.y >= 1) v -= c * s.y * std::pow(x, static_cast<long double>(s.y - 1));
  return v;
}

// Antiderivative of f evaluated at x.
Rational antiderivative(const PowerSumSpec& s, long x) {
  return power(x, s.w + 1) / Rational(s.w + 1) - s.c * power(x, s.y + 1) / Rational(s.y + 1);
}

}  // namespace

void PowerSumSpec::validate() const {
  if (w < 0) throw DomainError("exponent w must be >= 0");
  if (a < 0 || b < a) throw DomainError("need 0 <= a <= b");
  if (c.sign() < 0) throw DomainError("correction coefficient c must be >= 0");
  if (c.sign() != 0 && (y < 0 || y >= w)) throw DomainError("need 0 <= y < w");
}

bool EMResult::brackets() const {
  if (!exact) return false;
  const Rational gap = (*exact - approximation).abs();
  if (remainder_bound_exact) return gap <= *remainder_bound_exact;
  return gap.to_long_double() <= static_cast<long double>(remainder_bound);
}

Rational exact_power_sum(const PowerSumSpec& spec) {
  spec.validate();
  BigInt main = 0;
  BigInt correction = 0;
  BigInt term;
  for (long m = spec.a; m <= spec.b; ++m) {
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<ul>(m), static_cast<ul>(spec.w));
    main += term;
    if (spec.c.sign() != 0) {
      mpz_ui_pow_ui(term.get_mpz_t(), static_cast<ul>(m), static_cast<ul>(spec.y));
      correction += term;
    }
  }
  return Rational(main) - spec.c * Rational(correction);
}

EMResult euler_maclaurin(const PowerSumSpec& spec, int p) {
  if (p != 2) throw DomainError("only p = 2 is supported, got p = " + std::to_string(p));
  spec.validate();
  const PowerSumSpec s = spec.c.sign() == 0 ? PowerSumSpec{spec.w, 0, 0, spec.a, spec.b} : spec;

  EMResult out;
  const Rational b2(1, 6);
  out.approximation = antiderivative(s, s.b) - antiderivative(s, s.a) +
                      (f(s, s.a) + f(s, s.b)) / Rational(2) +
                      b2 / Rational(2) * (f1(s, s.b) - f1(s, s.a));
  out.approximation_value = out.approximation.to_double();

  // 2 zeta(2) / (2 pi)^2 = 1/12 exactly.
  const Rational constant(1, 12);

  // f''(x) = w(w-1) x^(w-2) - c y(y-1) x^(y-2) changes sign at most once on
  // x > 0, at x0 with x0^(w-y) = c y(y-1) / (w(w-1)).
  const Rational lead(static_cast<long>(s.w) * (s.w - 1));
  const Rational tail = s.c * Rational(static_cast<long>(s.y) * (s.y - 1));
  bool split = false;
  Rational root_power;
  if (lead.sign() > 0 && tail.sign() > 0) {
    root_power = tail / lead;
    const ul gap = static_cast<ul>(s.w - s.y);
    split = power(s.a, static_cast<long>(gap)) < root_power && root_power < power(s.b, static_cast<long>(gap));
  }

  if (!split) {
    const Rational bound = constant * (f1(s, s.b) - f1(s, s.a)).abs();
    out.remainder_bound_exact = bound;
    out.remainder_bound = bound.to_double();
  } else {
    const long double x0 =
        std::pow(root_power.to_long_double(), 1.0L / static_cast<long double>(s.w - s.y));
    const long double at_root = f1_real(s, x0);
    const long double variation = std::fabs(at_root - f1(s, s.a).to_long_double()) +
                                  std::fabs(f1(s, s.b).to_long_double() - at_root);
    // f' is extremal at x0, so a slightly misplaced root only lowers the
    // total variation; the relative slack covers that and the rounding.
    out.remainder_bound = static_cast<double>(variation / 12.0L * (1.0L + 1e-12L));
  }

  if (s.b - s.a <= kExactSummationLimit) out.exact = exact_power_sum(s);
  return out;
}

FallingFactorialBounds falling_factorial_bounds(long m, long L, long k) {
  if (m < 1 || L < 0 || k < 1) throw DomainError("need m >= 1, L >= 0, k >= 1");
  const BigInt base = pow(BigInt(m), static_cast<ul>(L));
  if (base < k - 1) throw DomainError("need m^L >= k - 1");

  FallingFactorialBounds out;
  if (base.fits_ulong_p()) {
    // B!/(B-k)! = C(B, k) k!
    BigInt factorial;
    mpz_bin_uiui(out.exact.get_mpz_t(), base.get_ui(), static_cast<ul>(k));
    mpz_fac_ui(factorial.get_mpz_t(), static_cast<ul>(k));
    out.exact *= factorial;
  } else {
    out.exact = 1;
    for (long i = 0; i < k; ++i) out.exact *= base - i;
  }
  out.upper = pow(base, static_cast<ul>(k));
  out.lower = out.upper - pow(base, static_cast<ul>(k - 1)) * (BigInt(k) * (k - 1) / 2);
  return out;
}

Rational main_term_sum_power(long N, long k, long L) {
  if (N < 2 || k < 1 || L < 1) throw DomainError("need N >= 2, k >= 1, L >= 1");
  const long e = L * k + 1;
  return Rational(pow(BigInt(N - 1), static_cast<ul>(e)), BigInt(e));
}

BigInt exact_sum_power(long N, long k, long L) {
  if (N < 2 || k < 1 || L < 1) throw DomainError("need N >= 2, k >= 1, L >= 1");
  long start = 1;
  while (pow(BigInt(start), static_cast<ul>(L)) < k) ++start;
  BigInt total = 0;
  BigInt term;
  for (long m = start; m <= N - 1; ++m) {
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<ul>(m), static_cast<ul>(L * k));
    total += term;
  }
  return total;
}

double main_term_relative_error(long N, long k, long L) {
  const Rational main = main_term_sum_power(N, k, L);
  const BigInt exact = exact_sum_power(N, k, L);
  if (exact == 0) throw DomainError("exact sum is empty for these parameters");
  return ((main - Rational(exact)).abs() / Rational(exact)).to_double();
}

}  // namespace gtank
