#include "gtank/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "gtank/errors.hpp"

namespace gtank {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end) {
    // accept scientific shorthand such as 1e9
    char* stop = nullptr;
    const double d = std::strtod(raw, &stop);
    if (stop != end || !(d >= 0) || d > 1.8e19) {
      throw DomainError(std::string(name) + ": not an unsigned integer: '" + raw + "'");
    }
    value = static_cast<std::uint64_t>(d);
  }
  return value;
}

}  // namespace gtank
