#include "gtank/rng.hpp"

#include "gtank/errors.hpp"

namespace gtank {

namespace {
__extension__ typedef unsigned __int128 u128;
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t trial) {
  std::uint64_t state = master_seed + (trial + 1) * kGamma;
  const std::uint64_t hi = splitmix64(state);
  const std::uint64_t lo = splitmix64(state);
  return hi ^ (lo << 1 | lo >> 63);
}

std::int64_t TrialRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  u128 product = static_cast<u128>(next()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>(next()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return lo + static_cast<std::int64_t>(product >> 64);
}

double TrialRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace gtank
