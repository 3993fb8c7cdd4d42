#include "gtank/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gtank/config.hpp"
#include "gtank/errors.hpp"

namespace gtank {
namespace {

__extension__ typedef unsigned __int128 u128;

BigInt to_bigint(u128 v) {
  BigInt hi(static_cast<unsigned long>(v >> 64));
  BigInt lo(static_cast<unsigned long>(v));
  return (hi << 64) + lo;
}

void check_subset_budget(long n, long k, const OracleOptions& options) {
  const std::uint64_t count = subset_count(n, k);
  if (count > options.max_subsets) {
    throw ResourceError("oracle: C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                            (count == std::numeric_limits<std::uint64_t>::max()
                                 ? std::string("overflow")
                                 : std::to_string(count)) +
                            " subsets exceeds cap " + std::to_string(options.max_subsets),
                        count, options.max_subsets);
  }
}

MomentReport moments_from_histogram(std::span<const std::uint64_t> counts, std::uint64_t total) {
  BigInt first = 0;
  BigInt second = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    const BigInt c(static_cast<unsigned long>(counts[v]));
    const BigInt value(static_cast<unsigned long>(v));
    first += c * value;
    second += c * value * value;
  }
  const BigInt n(static_cast<unsigned long>(total));
  return MomentReport::from_raw_moments(Rational(first, n), Rational(second, n),
                                        Provenance::oracle);
}

}  // namespace

MomentReport MomentReport::from_raw_moments(Rational mean, Rational second_moment,
                                            Provenance provenance) {
  MomentReport r;
  r.variance = second_moment - mean * mean;
  r.mean = std::move(mean);
  r.second_moment = std::move(second_moment);
  r.variance_provenance = provenance;
  return r;
}

OracleOptions oracle_options_from_env() {
  OracleOptions options;
  options.max_subsets = env_u64("GTANK_ORACLE_CAP", options.max_subsets);
  return options;
}

std::uint64_t subset_count(long n, long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 out = 1;
  for (long i = 1; i <= k; ++i) {
    out = out * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    if (out > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(out);
}

SubsetScan oracle_scan(long N, long k, const OracleOptions& options) {
  if (k < 1 || k > N) {
    throw DomainError("oracle: need 1 <= k <= N, got N=" + std::to_string(N) +
                      " k=" + std::to_string(k));
  }
  check_subset_budget(N, k, options);

  SubsetScan scan;
  scan.N = N;
  scan.k = k;
  const auto stride = static_cast<std::size_t>(N + 1);
  scan.rank_counts.assign(static_cast<std::size_t>(k) * stride, 0);
  scan.spread_counts.assign(stride, 0);

  u128 top_two = 0;
  std::uint64_t subsets = 0;
  std::uint64_t* counts = scan.rank_counts.data();
  std::uint64_t* spreads = scan.spread_counts.data();

  // c holds the subset in ascending order, values 1..N.
  std::vector<long> c(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  const long last = k - 1;
  while (true) {
    ++subsets;
    for (long i = 0; i < k; ++i) {
      // position i (ascending) is rank k - i
      counts[static_cast<std::size_t>(last - i) * stride + static_cast<std::size_t>(c[static_cast<std::size_t>(i)])]++;
    }
    spreads[c[static_cast<std::size_t>(last)] - c[0]]++;
    if (k >= 2) {
      top_two += static_cast<u128>(c[static_cast<std::size_t>(last)]) *
                 static_cast<u128>(c[static_cast<std::size_t>(last - 1)]);
    }

    long i = last;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == N - k + 1 + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }

  scan.subsets = subsets;
  scan.top_two_product_sum = to_bigint(top_two);
  return scan;
}

MomentReport SubsetScan::moments(const OrderStatistic& statistic) const {
  if (statistic.kind == OrderStatistic::Kind::spread) {
    return moments_from_histogram(spread_counts, subsets);
  }
  if (statistic.rank < 1 || statistic.rank > k) {
    throw DomainError("oracle: rank " + std::to_string(statistic.rank) + " outside [1, " +
                      std::to_string(k) + "]");
  }
  const auto stride = static_cast<std::size_t>(N + 1);
  const std::span<const std::uint64_t> row(rank_counts.data() + static_cast<std::size_t>(statistic.rank - 1) * stride, stride);
  return moments_from_histogram(row, subsets);
}

MomentReport oracle_moments(long N, long k, const OrderStatistic& statistic,
                            const OracleOptions& options) {
  if (statistic.kind == OrderStatistic::Kind::rank && (statistic.rank < 1 || statistic.rank > k)) {
    throw DomainError("oracle: rank " + std::to_string(statistic.rank) + " outside [1, k]");
  }
  return oracle_scan(N, k, options).moments(statistic);
}

Rational SubsetScan::covariance_top_two() const {
  if (k < 2) throw DomainError("oracle covariance needs k >= 2");
  const MomentReport top = moments(OrderStatistic::largest());
  const MomentReport second = moments(OrderStatistic::second_largest());
  const Rational product_mean(top_two_product_sum, BigInt(static_cast<unsigned long>(subsets)));
  const Rational raw_cov = product_mean - top.mean * second.mean;
  return raw_cov * Rational((k + 1) * (k + 1), k * (k - 1));
}

Rational oracle_covariance_top_two(long N, long k, const OracleOptions& options) {
  if (k < 2) throw DomainError("oracle covariance needs k >= 2");
  return oracle_scan(N, k, options).covariance_top_two();
}

MomentReport oracle_max_statistic(std::span<const long> point_values, long k,
                                  const OracleOptions& options) {
  const long n = static_cast<long>(point_values.size());
  if (k < 1 || k > n) throw DomainError("oracle: need 1 <= k <= population size");
  check_subset_budget(n, k, options);

  BigInt first = 0;
  BigInt second = 0;
  std::uint64_t subsets = 0;
  for_each_combination(static_cast<int>(n), static_cast<int>(k), [&](std::span<const int> idx) {
    long best = point_values[static_cast<std::size_t>(idx[0])];
    for (int i : idx) best = std::max(best, point_values[static_cast<std::size_t>(i)]);
    first += best;
    second += BigInt(best) * best;
    ++subsets;
  });
  const BigInt total(static_cast<unsigned long>(subsets));
  return MomentReport::from_raw_moments(Rational(first, total), Rational(second, total),
                                        Provenance::oracle);
}

}  // namespace gtank
