#pragma once

#include <optional>

#include "gtank/rational.hpp"

namespace gtank {

/// sum_{m=a}^{b} (m^w - c m^y). Requires 0 <= a <= b, c >= 0, and 0 <= y < w
/// whenever c != 0.
struct PowerSumSpec {
  int w = 0;
  Rational c = 0;
  int y = 0;
  long a = 0;
  long b = 0;

  void validate() const;
};

struct EMResult {
  Rational approximation;       // integral + endpoint average + B2 term
  double approximation_value = 0;
  double remainder_bound = 0;   // (1/12) * integral of |f''| over [a, b]
  // Present when f'' keeps one sign on [a, b], so the bound is a rational.
  std::optional<Rational> remainder_bound_exact;
  // Direct summation; present when b - a <= exact_limit.
  std::optional<Rational> exact;

  /// |exact - approximation| <= remainder_bound. False when exact is absent.
  bool brackets() const;
};

inline constexpr long kExactSummationLimit = 1'000'000;

/// Euler-Maclaurin at order p = 2:
///   sum f = int_a^b f + (f(a) + f(b))/2 + (B2/2)(f'(b) - f'(a)) + R,
///   |R| <= 2 zeta(2)/(2 pi)^2 int |f''| = (1/12) int |f''|.
/// Any other p throws DomainError.
EMResult euler_maclaurin(const PowerSumSpec& spec, int p = 2);

/// value of sum_{m=a}^{b} (m^w - c m^y) by direct summation.
Rational exact_power_sum(const PowerSumSpec& spec);

struct FallingFactorialBounds {
  BigInt lower;  // B^k - B^(k-1) k(k-1)/2
  BigInt exact;  // B (B-1) ... (B-k+1)
  BigInt upper;  // B^k
};

/// Sandwich for the falling factorial of B = m^L. Requires m >= 1, L >= 0,
/// k >= 1 and m^L >= k - 1.
FallingFactorialBounds falling_factorial_bounds(long m, long L, long k);

/// (N-1)^(Lk+1) / (Lk+1), the leading term of sum m^(Lk).
Rational main_term_sum_power(long N, long k, long L);

/// sum_{m = ceil(k^(1/L))}^{N-1} m^(Lk), exactly.
BigInt exact_sum_power(long N, long k, long L);

/// |main - exact| / exact.
double main_term_relative_error(long N, long k, long L);

}  // namespace gtank
