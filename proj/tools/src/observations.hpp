#pragma once

#include <iosfwd>
#include <string>

#include "gtank/geometry.hpp"

namespace gtank::cli {

/// One point per line, `dim` whitespace-separated coordinates, `#` starts a
/// comment. Discrete mode accepts decimal integers only. Throws DomainError
/// with the offending line number.
ObservationSet read_observations(std::istream& in, int dim, Mode mode);
ObservationSet read_observations_file(const std::string& path, int dim, Mode mode);

/// Parses a single statistic; discrete mode requires an integer.
double parse_value(const std::string& token, Mode mode);

}  // namespace gtank::cli
