#include "observations.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gtank/errors.hpp"

namespace gtank::cli {

double parse_value(const std::string& token, Mode mode) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  if (mode == Mode::discrete) {
    long v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) {
      throw DomainError("'" + token + "' is not an integer (discrete mode takes integer coordinates)");
    }
    return static_cast<double>(v);
  }
  double v = 0;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || !std::isfinite(v)) {
    throw DomainError("'" + token + "' is not a finite real number");
  }
  return v;
}

ObservationSet read_observations(std::istream& in, int dim, Mode mode) {
  std::vector<double> coords;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    int count = 0;
    while (fields >> token) {
      try {
        coords.push_back(parse_value(token, mode));
      } catch (const DomainError& e) {
        throw DomainError("observations line " + std::to_string(number) + ": " + e.what());
      }
      ++count;
    }
    if (count != 0 && count != dim) {
      throw DomainError("observations line " + std::to_string(number) + ": expected " +
                        std::to_string(dim) + " coordinates, found " + std::to_string(count));
    }
  }
  if (coords.empty()) throw DomainError("observations file contains no points");
  return ObservationSet(dim, std::move(coords));
}

ObservationSet read_observations_file(const std::string& path, int dim, Mode mode) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open observations file '" + path + "'");
  return read_observations(in, dim, mode);
}

}  // namespace gtank::cli
