#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtank/rational.hpp"

namespace gtank {

enum class Provenance { closed_form, oracle };

struct MomentReport {
  Rational mean;
  Rational second_moment;
  Rational variance;  // second_moment - mean^2
  Provenance variance_provenance = Provenance::closed_form;

  static MomentReport from_raw_moments(Rational mean, Rational second_moment,
                                       Provenance provenance);
};

struct OracleOptions {
  // Refuse to enumerate more than this many subsets.
  std::uint64_t max_subsets = 10'000'000;
};

/// Reads GTANK_ORACLE_CAP if set, else the default cap.
OracleOptions oracle_options_from_env();

/// Statistic of a k-subset of {1..N}: rank 1 is the largest element.
struct OrderStatistic {
  enum class Kind { rank, spread };
  Kind kind = Kind::rank;
  long rank = 1;

  static OrderStatistic largest() { return {Kind::rank, 1}; }
  static OrderStatistic second_largest() { return {Kind::rank, 2}; }
  static OrderStatistic lth_largest(long L) { return {Kind::rank, L}; }
  static OrderStatistic spread() { return {Kind::spread, 0}; }
};

/// Raw tallies from one pass over every k-subset of {1..N}.
struct SubsetScan {
  long N = 0;
  long k = 0;
  std::uint64_t subsets = 0;
  // counts[(rank - 1) * (N + 1) + v]: subsets whose rank-th largest is v.
  std::vector<std::uint64_t> rank_counts;
  // spread_counts[s]: subsets with max - min = s.
  std::vector<std::uint64_t> spread_counts;
  // Sum over subsets of (largest * second largest); zero when k < 2.
  BigInt top_two_product_sum;

  MomentReport moments(const OrderStatistic& statistic) const;
  /// Cov(X_k, X_{k-1}) of the unbiased rescalings; needs k >= 2.
  Rational covariance_top_two() const;
};

/// Number of k-subsets of an n-set, saturating at UINT64_MAX.
std::uint64_t subset_count(long n, long k);

/// Enumerates every k-subset of {1..N} in lexicographic order. Throws
/// ResourceError when C(N, k) exceeds the cap and DomainError for bad (N, k).
SubsetScan oracle_scan(long N, long k, const OracleOptions& options = {});

/// Exact moments of `statistic` by enumeration.
MomentReport oracle_moments(long N, long k, const OrderStatistic& statistic,
                            const OracleOptions& options = {});

/// Cov(X_k, X_{k-1}) of the rescaled top two order statistics, by enumeration.
Rational oracle_covariance_top_two(long N, long k, const OracleOptions& options = {});

/// Moments of max_{i in S} value[i] over every k-subset S of a finite
/// population. Used for multi-dimensional statistics such as the largest
/// coordinate on a grid or the largest sum of squares in a ball.
MomentReport oracle_max_statistic(std::span<const long> point_values, long k,
                                  const OracleOptions& options = {});

/// Calls visit(std::span<const int>) for every ascending k-subset of
/// {0..n-1}, in lexicographic order.
template <class Visit>
void for_each_combination(int n, int k, Visit&& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(std::span<const int>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace gtank
