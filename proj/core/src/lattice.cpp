#include "gtank/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gtank/config.hpp"
#include "gtank/errors.hpp"

namespace gtank {
namespace {

void require_dim(int dim) {
  if (dim < 1) throw DomainError("lattice dimension must be >= 1, got " + std::to_string(dim));
}

struct BallCounter {
  int dim;
  std::uint64_t budget;
  std::uint64_t visited = 0;

  void charge() {
    if (++visited > budget) {
      throw ResourceError("lattice enumeration exceeded budget of " + std::to_string(budget) +
                              " candidate points",
                          visited, budget);
    }
  }

  // Points of Z^depth with sum of squares <= remaining.
  std::uint64_t count(int depth, std::int64_t remaining) {
    const std::int64_t bound = isqrt(remaining);
    if (depth == 1) {
      charge();
      return static_cast<std::uint64_t>(2 * bound + 1);
    }
    std::uint64_t total = 0;
    for (std::int64_t x = -bound; x <= bound; ++x) {
      charge();
      total += count(depth - 1, remaining - x * x);
    }
    return total;
  }
};

}  // namespace

LatticeOptions lattice_options_from_env() {
  LatticeOptions options;
  options.budget = env_u64("GTANK_ENUM_BUDGET", options.budget);
  return options;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  // Squares are compared in 128 bits: (s + 1)^2 can pass INT64_MAX.
  __extension__ using wide = __int128;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && static_cast<wide>(s) * s > n) --s;
  while (static_cast<wide>(s + 1) * (s + 1) <= n) ++s;
  return s;
}

BigInt count_ball(std::int64_t r_sq, int dim, const LatticeOptions& options) {
  require_dim(dim);
  if (r_sq < 0) return 0;
  BallCounter counter{dim, options.budget};
  return BigInt(static_cast<unsigned long>(counter.count(dim, r_sq)));
}

BigInt count_square(long N, int dim) {
  require_dim(dim);
  if (N < 0) throw DomainError("square side must be >= 0");
  return pow(BigInt(N), static_cast<unsigned long>(dim));
}

LatticeCount lattice_count_ball(std::int64_t r_sq, int dim, const LatticeOptions& options) {
  return {LatticeCount::Shape::ball, static_cast<long>(r_sq), dim, count_ball(r_sq, dim, options)};
}

LatticeCount lattice_count_square(long N, int dim) {
  return {LatticeCount::Shape::square, N, dim, count_square(N, dim)};
}

std::vector<std::uint64_t> ball_shell_counts(std::int64_t r_sq, int dim,
                                             const LatticeOptions& options) {
  require_dim(dim);
  if (r_sq < 0) throw DomainError("r_sq must be >= 0");
  std::vector<std::uint64_t> shell(static_cast<std::size_t>(r_sq) + 1, 0);
  std::uint64_t visited = 0;
  // Depth-first over the first dim-1 coordinates; the last coordinate is
  // looped explicitly since each value lands in a different shell.
  auto walk = [&](auto&& self, int depth, std::int64_t used) -> void {
    const std::int64_t bound = isqrt(r_sq - used);
    for (std::int64_t x = -bound; x <= bound; ++x) {
      if (++visited > options.budget) {
        throw ResourceError("lattice shell enumeration exceeded budget", visited, options.budget);
      }
      const std::int64_t s = used + x * x;
      if (depth == 1) {
        ++shell[static_cast<std::size_t>(s)];
      } else {
        self(self, depth - 1, s);
      }
    }
  };
  walk(walk, dim, 0);
  return shell;
}

std::vector<std::int64_t> ball_points(std::int64_t r_sq, int dim, std::uint64_t max_points) {
  require_dim(dim);
  if (r_sq < 0) return {};
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> point(static_cast<std::size_t>(dim));
  std::uint64_t emitted = 0;
  auto walk = [&](auto&& self, int axis, std::int64_t remaining) -> void {
    const std::int64_t bound = isqrt(remaining);
    for (std::int64_t x = -bound; x <= bound; ++x) {
      point[static_cast<std::size_t>(axis)] = x;
      if (axis + 1 == dim) {
        if (++emitted > max_points) {
          throw ResourceError("ball has more than " + std::to_string(max_points) + " lattice points",
                              emitted, max_points);
        }
        out.insert(out.end(), point.begin(), point.end());
      } else {
        self(self, axis + 1, remaining - x * x);
      }
    }
  };
  walk(walk, 0, r_sq);
  return out;
}

GaussCircleError gauss_circle_error(long r, const LatticeOptions& options) {
  if (r < 0) throw DomainError("radius must be >= 0");
  GaussCircleError out;
  out.r = r;
  out.count = count_ball(static_cast<std::int64_t>(r) * r, 2, options);
  out.area = std::numbers::pi * static_cast<double>(r) * static_cast<double>(r);
  out.abs_error = std::abs(out.count.get_d() - out.area);
  return out;
}

double gauss_circle_annulus_bound(long r) {
  return std::numbers::pi * (std::numbers::sqrt2 * static_cast<double>(r) + 0.5);
}

bool attainable_m1(std::int64_t m1, int dim, const LatticeOptions& options) {
  if (m1 < 0) throw DomainError("m1 must be >= 0");
  return count_ball(m1, dim, options) - count_ball(m1 - 1, dim, options) > 0;
}

double ball_volume(double r, int dim) {
  require_dim(dim);
  if (r < 0) throw DomainError("radius must be >= 0");
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(r, dim);
}

}  // namespace gtank
