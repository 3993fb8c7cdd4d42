#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gtank {

/// Identifier recorded in every simulation report. Changing any part of
/// the construction below must change this string.
inline constexpr std::string_view kRngAlgorithmId = "mt19937_64/splitmix64-child-seeds/v1";

/// One step of SplitMix64 on `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for trial `trial`: two SplitMix64 outputs from
/// master_seed + (trial + 1) * golden gamma, folded together.
std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t trial);

/// Per-trial generator. Uniform helpers are defined here rather than via
/// std::uniform_*_distribution so the stream is identical across standard
/// libraries.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi], unbiased (Lemire's multiply-and-reject).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gtank
