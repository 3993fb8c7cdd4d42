#include "gtank/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gtank/errors.hpp"

namespace gtank {

std::string_view to_string(Mode mode) {
  return mode == Mode::discrete ? "discrete" : "continuous";
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::interval: return "interval";
    case Shape::square: return "square";
    case Shape::ball: return "ball";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "discrete") return Mode::discrete;
  if (text == "continuous") return Mode::continuous;
  throw DomainError("unknown mode '" + std::string(text) + "'");
}

Shape parse_shape(std::string_view text) {
  if (text == "interval" || text == "line") return Shape::interval;
  if (text == "square") return Shape::square;
  if (text == "ball" || text == "circle") return Shape::ball;
  throw DomainError("unknown geometry '" + std::string(text) + "'");
}

void GeometryDomain::validate() const {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (shape == Shape::interval && dim != 1) throw DomainError("interval geometry has dim 1");
  if (!(size > 0) || !std::isfinite(size)) throw DomainError("geometry size must be positive");
  if (mode == Mode::discrete && std::floor(size) != size) {
    throw DomainError("discrete geometry needs an integer size");
  }
}

std::int64_t GeometryDomain::integer_size() const { return static_cast<std::int64_t>(size); }

std::string GeometryDomain::describe() const {
  std::ostringstream os;
  os << to_string(mode) << ' ' << to_string(shape) << " L=" << dim;
  if (size > 0) os << (shape == Shape::ball ? " r=" : " N=") << size;
  return os.str();
}

ObservationSet::ObservationSet(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim < 1) throw DomainError("observation dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(dim) != 0) {
    throw DomainError("coordinate count is not a multiple of the dimension");
  }
}

std::span<const double> ObservationSet::point(std::size_t i) const {
  return std::span<const double>(coords_).subspan(i * static_cast<std::size_t>(dim_),
                                                  static_cast<std::size_t>(dim_));
}

namespace {

void require_nonempty(const ObservationSet& obs) {
  if (obs.size() == 0) throw DomainError("empty observation set");
}

void require_line(const ObservationSet& obs) {
  require_nonempty(obs);
  if (obs.dim() != 1) throw DomainError("statistic needs one-dimensional observations");
}

}  // namespace

double ObservationSet::max_component() const {
  require_nonempty(*this);
  return *std::max_element(coords_.begin(), coords_.end());
}

double ObservationSet::max_along(int axis) const {
  require_nonempty(*this);
  if (axis < 0 || axis >= dim_) throw DomainError("axis out of range");
  double best = coords_[static_cast<std::size_t>(axis)];
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, point(i)[static_cast<std::size_t>(axis)]);
  return best;
}

double ObservationSet::lth_largest(long L) const {
  require_line(*this);
  if (L < 1 || static_cast<std::size_t>(L) > coords_.size()) {
    throw DomainError("rank L outside [1, k]");
  }
  std::vector<double> sorted(coords_);
  std::nth_element(sorted.begin(), sorted.begin() + (L - 1), sorted.end(), std::greater<>());
  return sorted[static_cast<std::size_t>(L - 1)];
}

double ObservationSet::spread() const {
  require_line(*this);
  const auto [lo, hi] = std::minmax_element(coords_.begin(), coords_.end());
  return *hi - *lo;
}

double ObservationSet::max_sum_squares() const {
  require_nonempty(*this);
  double best = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0;
    for (double x : point(i)) s += x * x;
    best = std::max(best, s);
  }
  return best;
}

double ObservationSet::max_norm() const { return std::sqrt(max_sum_squares()); }

}  // namespace gtank
