#pragma once

#include <mutex>
#include <vector>

#include "gtank/rational.hpp"

namespace gtank {

/// Pascal-triangle cache of C(n, r). Rows are filled on demand with the
/// recurrence C(n, r) = C(n-1, r) + C(n-1, r-1) and never modified after.
/// Safe to share across threads; a lookup returns the same value the
/// uncached `binomial` would.
class BinomialTable {
 public:
  BigInt get(long n, long r) const;
  long rows() const;

 private:
  void fill_to(long n) const;

  mutable std::mutex mutex_;
  mutable std::vector<std::vector<BigInt>> rows_;
};

/// C(n, r) for n >= 0; zero when r < 0 or r > n. Throws DomainError for n < 0.
BigInt binomial(long n, long r);

/// Same contract, read through `cache` when one is given.
BigInt binomial(long n, long r, const BinomialTable* cache);

/// C(n, r) for any integer n with the convention that it vanishes whenever
/// n < 0 or r is outside [0, n]. Used by summations whose lower terms run
/// below the support.
BigInt binomial_or_zero(long n, long r);

/// Hockey stick: sum_{i=r}^{n} C(i, r) == C(n+1, r+1), both sides exact.
bool check_hockey_stick(long n, long r);

}  // namespace gtank
