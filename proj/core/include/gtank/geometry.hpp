#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtank {

enum class Mode { discrete, continuous };
enum class Shape { interval, square, ball };

std::string_view to_string(Mode mode);
std::string_view to_string(Shape shape);
Mode parse_mode(std::string_view text);
/// Accepts "interval"/"line", "square", "ball"/"circle".
Shape parse_shape(std::string_view text);

/// Sampling space. `size` is N for the interval and square, r for the ball.
///   discrete interval  {1..N}                 continuous interval  [0, N]
///   discrete square    {1..N}^L               continuous square    [0, N]^L
///   discrete ball      {x in Z^L : |x|^2 <= r^2}   continuous ball  |x| <= r
/// Discrete geometries need an integer size. The interval has dim 1.
struct GeometryDomain {
  Mode mode = Mode::discrete;
  Shape shape = Shape::interval;
  int dim = 1;
  double size = 0;

  /// Throws DomainError on non-positive size, dim < 1, a non-integer
  /// discrete size, or an interval with dim != 1.
  void validate() const;
  std::int64_t integer_size() const;
  std::string describe() const;
};

/// k points of dimension `dim`, stored row-major.
class ObservationSet {
 public:
  ObservationSet() = default;
  ObservationSet(int dim, std::vector<double> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> point(std::size_t i) const;
  std::span<const double> coords() const { return coords_; }

  /// Largest coordinate over all points and axes.
  double max_component() const;
  /// Largest coordinate along one axis.
  double max_along(int axis) const;
  /// L-th largest value (L = 1 is the maximum) of a one-dimensional sample.
  double lth_largest(long L) const;
  /// max - min of a one-dimensional sample.
  double spread() const;
  /// Largest x_1^2 + ... + x_L^2 over the points.
  double max_sum_squares() const;
  /// Largest Euclidean norm over the points.
  double max_norm() const;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace gtank
