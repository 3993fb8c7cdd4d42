#pragma once

#include <cstdint>
#include <vector>

#include "gtank/rational.hpp"

namespace gtank {

struct LatticeOptions {
  // Candidate points (partial coordinate prefixes) visited before giving up.
  std::uint64_t budget = 1'000'000'000;
};

/// Reads GTANK_ENUM_BUDGET if set.
LatticeOptions lattice_options_from_env();

struct LatticeCount {
  enum class Shape { square, ball };
  Shape shape;
  long size;   // N for the square, r^2 for the ball
  int dim;
  BigInt count;
};

/// Integer square root: largest s with s*s <= n, n >= 0.
std::int64_t isqrt(std::int64_t n);

/// #{x in Z^L : sum x_i^2 <= r_sq}. Integer comparisons only; the last
/// coordinate is counted in closed form, the others enumerated. Zero for
/// r_sq < 0. Throws ResourceError past the budget.
BigInt count_ball(std::int64_t r_sq, int dim, const LatticeOptions& options = {});

/// N^L lattice points of {1..N}^L.
BigInt count_square(long N, int dim);

LatticeCount lattice_count_ball(std::int64_t r_sq, int dim, const LatticeOptions& options = {});
LatticeCount lattice_count_square(long N, int dim);

/// shell[s] = #{x in Z^L : sum x_i^2 = s} for s in [0, r_sq].
std::vector<std::uint64_t> ball_shell_counts(std::int64_t r_sq, int dim,
                                             const LatticeOptions& options = {});

/// Every lattice point of the ball, flattened (dim coordinates per point),
/// in lexicographic order. Throws ResourceError if more than `max_points`.
std::vector<std::int64_t> ball_points(std::int64_t r_sq, int dim, std::uint64_t max_points);

struct GaussCircleError {
  long r;
  BigInt count;
  double area;
  double abs_error;
};

/// Compares P(r) = count_ball(r^2, 2) against pi r^2.
GaussCircleError gauss_circle_error(long r, const LatticeOptions& options = {});

/// The annulus bound pi (sqrt(2) r + 1/2) on |P(r) - pi r^2|.
double gauss_circle_annulus_bound(long r);

/// True iff m1 = sum x_i^2 has a solution in Z^L, decided by
/// count_ball(m1, L) - count_ball(m1 - 1, L) > 0.
bool attainable_m1(std::int64_t m1, int dim, const LatticeOptions& options = {});

/// pi^{L/2} / Gamma(L/2 + 1) * r^L.
double ball_volume(double r, int dim);

}  // namespace gtank
