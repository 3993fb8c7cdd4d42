#include "gtank/binomial.hpp"

#include <string>

#include "gtank/errors.hpp"

namespace gtank {

BigInt binomial(long n, long r) {
  if (n < 0) throw DomainError("binomial: n must be >= 0, got " + std::to_string(n));
  if (r < 0 || r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

BigInt binomial(long n, long r, const BinomialTable* cache) {
  if (cache == nullptr) return binomial(n, r);
  return cache->get(n, r);
}

BigInt binomial_or_zero(long n, long r) {
  if (n < 0) return 0;
  return binomial(n, r);
}

BigInt BinomialTable::get(long n, long r) const {
  if (n < 0) throw DomainError("binomial: n must be >= 0, got " + std::to_string(n));
  if (r < 0 || r > n) return 0;
  std::lock_guard lock(mutex_);
  fill_to(n);
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
}

long BinomialTable::rows() const {
  std::lock_guard lock(mutex_);
  return static_cast<long>(rows_.size());
}

void BinomialTable::fill_to(long n) const {
  while (static_cast<long>(rows_.size()) <= n) {
    const std::size_t row = rows_.size();
    std::vector<BigInt> next(row + 1);
    next[0] = 1;
    next[row] = 1;
    for (std::size_t r = 1; r < row; ++r) next[r] = rows_[row - 1][r - 1] + rows_[row - 1][r];
    rows_.push_back(std::move(next));
  }
}

bool check_hockey_stick(long n, long r) {
  if (r < 0 || n < r) {
    throw DomainError("hockey stick requires n >= r >= 0, got n=" + std::to_string(n) +
                      " r=" + std::to_string(r));
  }
  BigInt lhs = 0;
  for (long i = r; i <= n; ++i) lhs += binomial(i, r);
  return lhs == binomial(n + 1, r + 1);
}

}  // namespace gtank
