#include "gtank/distributions.hpp"

#include <string>

#include "gtank/binomial.hpp"
#include "gtank/errors.hpp"

namespace gtank {
namespace {

void require_sample(long N, long k) {
  if (k < 1 || k > N) {
    throw DomainError("need 1 <= k <= N, got N=" + std::to_string(N) + " k=" + std::to_string(k));
  }
}

void require_rank(long k, long L) {
  if (L < 1 || L > k) {
    throw DomainError("rank L=" + std::to_string(L) + " outside [1, k=" + std::to_string(k) + "]");
  }
}

}  // namespace

Rational pmf_largest(long N, long k, long m) {
  require_sample(N, k);
  if (m < k || m > N) return 0;
  return Rational(binomial(m - 1, k - 1), binomial(N, k));
}

Rational pmf_lth_largest(long N, long k, long L, long m) {
  require_sample(N, k);
  require_rank(k, L);
  if (m < k - L + 1 || m > N - L + 1) return 0;
  return Rational(binomial(m - 1, k - L) * binomial(N - m, L - 1), binomial(N, k));
}

Rational joint_pmf_top_two(long N, long k, long m_top, long m_second) {
  if (k < 2 || k > N) {
    throw DomainError("joint pmf needs 2 <= k <= N, got N=" + std::to_string(N) +
                      " k=" + std::to_string(k));
  }
  if (m_second < k - 1 || m_second >= m_top || m_top > N) return 0;
  return Rational(binomial(m_second - 1, k - 2), binomial(N, k));
}

MomentReport closed_moments_largest(long N, long k) {
  require_sample(N, k);
  const Rational mean(k * (N + 1), k + 1);
  const Rational variance(BigInt(k) * (N - k) * (N + 1), BigInt(k + 1) * (k + 1) * (k + 2));
  return {mean, variance + mean * mean, variance, Provenance::closed_form};
}

MomentReport closed_moments_lth(long N, long k, long L, const OracleOptions& options) {
  require_sample(N, k);
  require_rank(k, L);
  if (L == 1) return closed_moments_largest(N, k);

  const Rational mean((N + 1) * (k - L + 1), k + 1);
  if (L == 2) {
    const Rational variance(BigInt(2) * (k - 1) * (N - k) * (N + 1),
                            BigInt(k + 1) * (k + 1) * (k + 2));
    return {mean, variance + mean * mean, variance, Provenance::closed_form};
  }
  // No closed-form variance beyond the second largest.
  MomentReport enumerated = oracle_moments(N, k, OrderStatistic::lth_largest(L), options);
  enumerated.mean = mean;
  return enumerated;
}

Rational closed_covariance_top_two(long N, long k) {
  if (k < 2 || k > N) {
    throw DomainError("covariance needs 2 <= k <= N, got N=" + std::to_string(N) +
                      " k=" + std::to_string(k));
  }
  return Rational((N + 1) * (N - k), k * (k + 2));
}

Rational pmf_square_max(long N, long k, long L, long m) {
  if (N < 1 || L < 1) throw DomainError("square pmf needs N >= 1 and L >= 1");
  const BigInt population = pow(BigInt(N), static_cast<unsigned long>(L));
  if (k < 1 || BigInt(k) > population) throw DomainError("square pmf needs 1 <= k <= N^L");
  if (m < 1 || m > N) return 0;
  const auto cells = [L](long side) { return pow(BigInt(side), static_cast<unsigned long>(L)); };
  const BigInt total = binomial(population.get_si(), k);
  const BigInt below = binomial(cells(m).get_si(), k) - binomial(cells(m - 1).get_si(), k);
  return Rational(below, total);
}

}  // namespace gtank
