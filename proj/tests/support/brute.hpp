#pragma once

// Test-only reference computations. They share no code paths with the
// library: binomials come from the product formula, lattice counts from a
// full scan of the bounding cube, subsets from bitmasks.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "gtank/rational.hpp"

namespace gtank::brute {

inline Rational product_binomial(long n, long r) {
  if (r < 0 || r > n) return 0;
  Rational out = 1;
  for (long i = 0; i < r; ++i) out *= Rational(n - i, i + 1);
  return out;
}

/// #{x in [-b, b]^L : sum x^2 <= r_sq} by odometer over the whole cube.
inline std::uint64_t count_ball(long r_sq, int dim) {
  long b = 0;
  while ((b + 1) * (b + 1) <= r_sq) ++b;
  std::vector<long> x(static_cast<std::size_t>(dim), -b);
  std::uint64_t count = 0;
  for (;;) {
    long s = 0;
    for (long v : x) s += v * v;
    if (s <= r_sq) ++count;
    int i = 0;
    while (i < dim && x[static_cast<std::size_t>(i)] == b) x[static_cast<std::size_t>(i++)] = -b;
    if (i == dim) return count;
    ++x[static_cast<std::size_t>(i)];
  }
}

/// Sorted-descending samples of size k from {1..N}, via bitmasks (N <= 20).
inline void for_each_subset(int N, int k, const std::function<void(const std::vector<long>&)>& visit) {
  std::vector<long> desc;
  for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
    if (std::popcount(mask) != k) continue;
    desc.clear();
    for (int v = N; v >= 1; --v) {
      if (mask & (1u << (v - 1))) desc.push_back(v);
    }
    visit(desc);
  }
}

/// Exact mean and variance of f over all k-subsets of {1..N}.
inline std::pair<Rational, Rational> subset_moments(int N, int k,
                                                    const std::function<Rational(const std::vector<long>&)>& f) {
  Rational s1 = 0, s2 = 0;
  long n = 0;
  for_each_subset(N, k, [&](const std::vector<long>& desc) {
    const Rational v = f(desc);
    s1 += v;
    s2 += v * v;
    ++n;
  });
  const Rational mean = s1 / Rational(n);
  return {mean, s2 / Rational(n) - mean * mean};
}

}  // namespace gtank::brute
