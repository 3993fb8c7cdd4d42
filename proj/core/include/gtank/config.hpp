#pragma once

#include <cstdint>

namespace gtank {

// Environment overrides for resource caps:
//   GTANK_ORACLE_CAP   max subsets enumerated by the oracle (default 1e7)
//   GTANK_ENUM_BUDGET  max candidate points visited by lattice counting (default 1e9)
//   GTANK_TRIAL_CAP    max Monte Carlo trials per run (default 1e7)

/// Parses an unsigned integer environment variable; falls back to
/// `fallback` when unset. Throws DomainError on a malformed value.
std::uint64_t env_u64(const char* name, std::uint64_t fallback);

}  // namespace gtank
