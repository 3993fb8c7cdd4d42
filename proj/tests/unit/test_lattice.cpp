#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "brute.hpp"
#include "gtank/errors.hpp"
#include "gtank/lattice.hpp"

namespace gtank {
namespace {

TEST(CountBall, Examples) {
  EXPECT_EQ(count_ball(0, 5), 1);
  EXPECT_EQ(count_ball(1, 2), 5);
  EXPECT_EQ(count_ball(4, 2), 13);
  EXPECT_EQ(count_ball(1, 3), 7);
  EXPECT_EQ(count_ball(-1, 2), 0);
  EXPECT_THROW(count_ball(4, 0), DomainError);
}

TEST(CountBall, FrozenValues) {
  EXPECT_EQ(count_ball(10000, 2), 31417);
  EXPECT_EQ(count_ball(25, 3), 515);
  EXPECT_EQ(count_ball(100, 4), 49689);
  EXPECT_EQ(count_ball(7, 3), 81);
  EXPECT_EQ(count_ball(50, 3), 1503);
}

TEST(CountBall, AgreesWithCubeScan) {
  for (int dim = 1; dim <= 4; ++dim) {
    const long limit = dim <= 2 ? 400 : (dim == 3 ? 60 : 20);
    for (long r_sq = 0; r_sq <= limit; ++r_sq) {
      ASSERT_EQ(count_ball(r_sq, dim), BigInt(brute::count_ball(r_sq, dim))) << r_sq << " " << dim;
    }
  }
}

TEST(CountBall, OneDimensionIsAnInterval) {
  for (long r = 0; r <= 50; ++r) EXPECT_EQ(count_ball(r * r, 1), 2 * r + 1);
}

TEST(CountBall, BudgetRaisesResourceError) {
  LatticeOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(count_ball(10000, 3, tiny), ResourceError);
  EXPECT_THROW(ball_shell_counts(10000, 3, tiny), ResourceError);
}

TEST(CountSquare, Examples) {
  EXPECT_EQ(count_square(10, 3), 1000);
  EXPECT_EQ(count_square(7, 1), 7);
  EXPECT_EQ(count_square(1000, 4), BigInt("1000000000000"));
  EXPECT_EQ(lattice_count_square(5, 2).count, 25);
  EXPECT_EQ(lattice_count_ball(4, 2).count, 13);
}

TEST(ShellCounts, SumToBallCount) {
  for (int dim = 1; dim <= 4; ++dim) {
    const std::vector<std::uint64_t> shells = ball_shell_counts(60, dim);
    ASSERT_EQ(shells.size(), 61u);
    std::uint64_t running = 0;
    for (std::size_t s = 0; s < shells.size(); ++s) {
      running += shells[s];
      ASSERT_EQ(BigInt(running), count_ball(static_cast<std::int64_t>(s), dim));
    }
  }
  // Four squares: every shell of Z^4 is non-empty.
  for (std::uint64_t c : ball_shell_counts(40, 4)) EXPECT_GT(c, 0u);
}

TEST(BallPoints, DistinctAndInside) {
  const std::vector<std::int64_t> pts = ball_points(25, 3, 1000);
  ASSERT_EQ(pts.size(), 3u * 515u);
  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t i = 0; i < pts.size(); i += 3) {
    std::vector<std::int64_t> p(pts.begin() + static_cast<long>(i), pts.begin() + static_cast<long>(i) + 3);
    EXPECT_LE(p[0] * p[0] + p[1] * p[1] + p[2] * p[2], 25);
    seen.insert(p);
  }
  EXPECT_EQ(seen.size(), 515u);
  EXPECT_THROW(ball_points(25, 3, 514), ResourceError);
}

TEST(GaussCircle, SmallRadii) {
  const GaussCircleError zero = gauss_circle_error(0);
  EXPECT_EQ(zero.count, 1);
  EXPECT_DOUBLE_EQ(zero.abs_error, 1.0);

  const GaussCircleError one = gauss_circle_error(1);
  EXPECT_EQ(one.count, 5);
  EXPECT_NEAR(one.abs_error, 5.0 - std::numbers::pi, 1e-12);
  EXPECT_EQ(gauss_circle_error(2).count, 13);
  EXPECT_THROW(gauss_circle_error(-1), DomainError);
}

TEST(GaussCircle, AnnulusBoundHolds) {
  for (long r = 0; r <= 500; ++r) {
    const GaussCircleError e = gauss_circle_error(r);
    ASSERT_LE(e.abs_error, gauss_circle_annulus_bound(r)) << r;
  }
}

TEST(AttainableM1, SumsOfSquares) {
  EXPECT_FALSE(attainable_m1(3, 2));
  EXPECT_TRUE(attainable_m1(3, 3));
  EXPECT_TRUE(attainable_m1(25, 2));
  EXPECT_FALSE(attainable_m1(7, 3));
  EXPECT_TRUE(attainable_m1(7, 4));
  EXPECT_TRUE(attainable_m1(0, 2));
  EXPECT_THROW(attainable_m1(-1, 2), DomainError);
}

TEST(BallVolume, KnownValues) {
  EXPECT_DOUBLE_EQ(ball_volume(1.0, 1), 2.0);
  EXPECT_NEAR(ball_volume(1.0, 2), std::numbers::pi, 1e-14);
  EXPECT_NEAR(ball_volume(2.0, 3), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-12);
  EXPECT_NEAR(ball_volume(1.0, 4), std::numbers::pi * std::numbers::pi / 2.0, 1e-14);
}

TEST(Isqrt, Floors) {
  for (std::int64_t n = 0; n <= 10000; ++n) {
    const std::int64_t s = isqrt(n);
    ASSERT_LE(s * s, n);
    ASSERT_GT((s + 1) * (s + 1), n);
  }
  EXPECT_EQ(isqrt(INT64_MAX), 3037000499);
  EXPECT_THROW(isqrt(-1), DomainError);
}

}  // namespace
}  // namespace gtank
