#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"
#include "gtank/distributions.hpp"
#include "gtank/errors.hpp"
#include "gtank/estimators.hpp"

namespace gtank {
namespace {

TEST(D1Max, Examples) {
  EXPECT_DOUBLE_EQ(est_d1_max(50, 1).estimate, 99.0);
  for (long n = 1; n <= 30; ++n) EXPECT_DOUBLE_EQ(est_d1_max(n, n).estimate, static_cast<double>(n));
  EXPECT_EQ(est_d1_max(9, 5).estimate, 9.8);
  EXPECT_THROW(est_d1_max(4, 5), DomainError);
  EXPECT_THROW(est_d1_max(4, 0), DomainError);
  EXPECT_FALSE(est_d1_max(9, 5).approximate);
}

TEST(D1Spread, Examples) {
  EXPECT_DOUBLE_EQ(est_d1_spread(9, 10).estimate, 10.0);
  EXPECT_DOUBLE_EQ(est_d1_spread(50, 3).estimate, 99.0);
  EXPECT_THROW(est_d1_spread(5, 1), DomainError);
  EXPECT_THROW(est_d1_spread(1, 3), DomainError);
}

TEST(D1Spread, UnbiasedByEnumeration) {
  const auto [mean, var] = brute::subset_moments(12, 4, [](const std::vector<long>& d) {
    return Rational(d.front() - d.back()) * Rational(5, 3) - Rational(1);
  });
  EXPECT_EQ(mean, Rational(12));
  EXPECT_GT(var, Rational(0));
}

TEST(D1Lth, Examples) {
  for (long m = 5; m <= 40; ++m) EXPECT_EQ(est_d1_lth(m, 5, 1).estimate, est_d1_max(m, 5).estimate);
  EXPECT_DOUBLE_EQ(est_d1_lth(8, 5, 2).estimate, 11.0);
  EXPECT_THROW(est_d1_lth(8, 5, 6), DomainError);
  EXPECT_THROW(est_d1_lth(2, 5, 2), DomainError);
}

TEST(D1Lth, UnbiasedExactlyOverPmf) {
  for (long N = 1; N <= 25; ++N) {
    for (long k = 1; k <= N; ++k) {
      for (long L = 1; L <= k; ++L) {
        Rational expectation = 0;
        for (long m = k - L + 1; m <= N - L + 1; ++m) {
          const Rational estimate = Rational(m) * scaling_factor(EstimatorKind::d1_lth, k, L) - Rational(1);
          expectation += pmf_lth_largest(N, k, L, m) * estimate;
        }
        ASSERT_EQ(expectation, Rational(N)) << N << " " << k << " " << L;
      }
    }
  }
}

TEST(D1Continuous, Examples) {
  EXPECT_DOUBLE_EQ(est_d1_cont(0.9, 9).estimate, 1.0);
  EXPECT_DOUBLE_EQ(est_d1_cont(0.5, 1).estimate, 1.0);
  EXPECT_DOUBLE_EQ(est_d1_cont_second(0.6, 4).estimate, 1.0);
  EXPECT_THROW(est_d1_cont(0.0, 3), DomainError);
  EXPECT_THROW(est_d1_cont(-1.0, 3), DomainError);
  EXPECT_THROW(est_d1_cont_second(0.5, 1), DomainError);
}

TEST(VarianceFormulas, Examples) {
  const VarianceFormulas f = var_formulas(10, 5);
  EXPECT_EQ(f.var_Xk, Rational(11, 7));
  EXPECT_EQ(f.var_Xk1, Rational(55, 14));
  EXPECT_EQ(f.var_Xk1 / f.var_Xk, Rational(5, 2));
  EXPECT_EQ(var_formulas(6, 6).var_Xk, Rational(0));
  EXPECT_EQ(f.cov, f.var_Xk);
  EXPECT_EQ(f.var_Xk_cont, Rational(100, 35));
  EXPECT_THROW(var_formulas(5, 1), DomainError);
}

TEST(OptimalAlpha, IndependentAssets) {
  const AlphaResult equal = optimal_alpha(Rational(3), Rational(3), Rational(0));
  EXPECT_EQ(equal.alpha, Rational(1, 2));
  EXPECT_EQ(equal.variance, Rational(3, 2));

  const AlphaResult unequal = optimal_alpha(Rational(1), Rational(4), Rational(0));
  EXPECT_EQ(unequal.alpha, Rational(4, 5));
}

TEST(OptimalAlpha, GermanTankIsOne) {
  const VarianceFormulas f = var_formulas(10, 3);
  const AlphaResult r = optimal_alpha(f.var_Xk, f.var_Xk1, f.cov);
  EXPECT_EQ(r.alpha, Rational(1));
  EXPECT_EQ(r.variance, f.var_Xk);
  EXPECT_FALSE(r.any_alpha);
}

TEST(OptimalAlpha, EndpointsAndDegenerateCases) {
  // Stationary point outside [0, 1]: the better endpoint wins.
  const AlphaResult outside = optimal_alpha(Rational(1), Rational(9), Rational(2));
  EXPECT_EQ(outside.alpha, Rational(1));
  EXPECT_TRUE(outside.has_critical_point);
  EXPECT_GT(outside.critical, Rational(1));

  const AlphaResult flat = optimal_alpha(Rational(2), Rational(2), Rational(2));
  EXPECT_TRUE(flat.any_alpha);
  EXPECT_EQ(flat.variance, Rational(2));

  // N = k: every variance vanishes.
  const VarianceFormulas zero = var_formulas(4, 4);
  EXPECT_TRUE(optimal_alpha(zero.var_Xk, zero.var_Xk1, zero.cov).any_alpha);
}

TEST(OptimalAlpha, MinimisesOverGrid) {
  const Rational a(5), b(7), c(-1);
  const AlphaResult r = optimal_alpha(a, b, c);
  for (int i = 0; i <= 100; ++i) {
    EXPECT_LE(r.variance, weighted_variance(Rational(i, 100), a, b, c));
  }
}

TEST(WeightedEstimate, Examples) {
  EXPECT_EQ(weighted_estimate(1.0, 3.0, 8.0), 3.0);
  EXPECT_EQ(weighted_estimate(0.0, 3.0, 8.0), 8.0);
  EXPECT_DOUBLE_EQ(weighted_estimate(0.5, 10.0, 12.0), 11.0);
  EXPECT_THROW(weighted_estimate(1.5, 1.0, 1.0), DomainError);
  EXPECT_THROW(weighted_estimate(-0.1, 1.0, 1.0), DomainError);
}

TEST(SquareDiscrete, Examples) {
  EXPECT_DOUBLE_EQ(est_square_discrete(101, 10, 2).estimate, 105.0);
  const EstimateResult one = est_square_discrete(1, 4, 2);
  EXPECT_EQ(one.estimate, 0.0);
  EXPECT_TRUE(one.degenerate);
  EXPECT_TRUE(one.below_observation);
  EXPECT_TRUE(one.approximate);
  EXPECT_THROW(est_square_discrete(0, 4, 2), DomainError);
}

TEST(SquareDiscrete, OneDimensionalCollapse) {
  for (long k = 1; k <= 12; ++k) {
    for (long m = k; m <= 60; ++m) {
      const double sq = est_square_discrete(m, k, 1).estimate;
      EXPECT_DOUBLE_EQ(sq, static_cast<double>((k + 1) * (m - 1)) / static_cast<double>(k));
      EXPECT_LE(std::abs(sq - est_d1_max(m, k).estimate), 1.0 / static_cast<double>(k) + 1e-12);
    }
  }
}

TEST(SquareDiscrete, BelowObservationFlag) {
  // (Lk+1)/(Lk) (m-1) < m exactly when m - 1 < Lk.
  EXPECT_TRUE(est_square_discrete(20, 10, 2).below_observation);
  EXPECT_FALSE(est_square_discrete(21, 10, 2).below_observation);
  EXPECT_FALSE(est_square_discrete(22, 10, 2).below_observation);
}

TEST(SquareContinuous, Examples) {
  EXPECT_DOUBLE_EQ(est_square_continuous(1.0, 1, 1).estimate, 2.0);
  EXPECT_DOUBLE_EQ(est_square_continuous(0.99, 10, 2).estimate, 1.0395);
  for (double m : {0.1, 0.5, 2.0}) {
    EXPECT_DOUBLE_EQ(est_square_continuous(m, 7, 1).estimate, est_d1_cont(m, 7).estimate);
  }
  EXPECT_THROW(est_square_continuous(0.0, 3, 2), DomainError);
}

TEST(BallDiscrete, Examples) {
  const EstimateResult one = est_ball_discrete(1, 6);
  EXPECT_EQ(one.estimate, 0.0);
  EXPECT_TRUE(one.degenerate);
  EXPECT_NEAR(est_ball_discrete(10001, 10).estimate, 104.880884817, 1e-9);
  EXPECT_THROW(est_ball_discrete(0, 3), DomainError);
}

TEST(BallContinuous, Examples) {
  EXPECT_DOUBLE_EQ(est_ball_continuous(1.0, 10, 2).estimate, 1.05);
  double previous = est_ball_continuous(1.0, 1, 3).estimate;
  for (long k = 2; k <= 200; ++k) {
    const double v = est_ball_continuous(1.0, k, 3).estimate;
    EXPECT_LT(v, previous);
    EXPECT_GT(v, 1.0);
    previous = v;
  }
  EXPECT_THROW(est_ball_continuous(-1.0, 3, 2), DomainError);
}

TEST(Recursive, FlatMaxYConvergesImmediately) {
  const RecursiveResult r = est_square_recursive(40, 1, 4, 40.0);
  EXPECT_TRUE(r.converged);
  EXPECT_DOUBLE_EQ(r.estimate, std::sqrt(40.0 * 5.0 / 4.0 - 1.0));
  // The value is reached on the first step; the stopping test needs a second.
  EXPECT_EQ(r.iterations, 2);
}

TEST(Recursive, FixedPointNearNForLargeK) {
  const RecursiveResult r = est_square_recursive(100, 100, 50, 100.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.estimate, 101.97048270946962, 1e-8);
  EXPECT_NEAR(square_recursive_fixed_point(100, 100, 50), 101.97048270946962, 1e-10);
}

TEST(Recursive, BothStartsReachTheClosedFormRoot) {
  const double tol = 1e-9;
  for (long k = 1; k <= 20; ++k) {
    for (long mx = 1; mx <= 120; mx += 7) {
      for (long my = 1; my <= 120; my += 11) {
        const double start = static_cast<double>(std::max(mx, my));
        const RecursiveResult low = est_square_recursive(mx, my, k, start, {tol, 500});
        const RecursiveResult high = est_square_recursive(mx, my, k, 10 * start, {tol, 500});
        ASSERT_TRUE(low.converged && high.converged);
        const double root = square_recursive_fixed_point(mx, my, k);
        ASSERT_LE(std::abs(low.estimate - root), tol) << mx << " " << my << " " << k;
        ASSERT_LE(std::abs(high.estimate - root), tol) << mx << " " << my << " " << k;
        ASSERT_LE(std::abs(low.estimate - high.estimate), 2 * tol);
      }
    }
  }
}

TEST(Recursive, Preconditions) {
  EXPECT_THROW(est_square_recursive(0, 3, 2, 5.0), DomainError);
  EXPECT_THROW(est_square_recursive(5, 3, 2, 4.0), DomainError);
  EXPECT_THROW(est_square_recursive(5, 3, 2, 5.0, {0.0, 10}), DomainError);
  const RecursiveResult capped = est_square_recursive(90, 95, 3, 950.0, {1e-15, 2});
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.iterations, 2);
}

TEST(EstimatorId, NamesRoundTrip) {
  for (const char* name : {"d1_max", "d1_spread", "d1_lth:3", "d1_cont_max", "d1_cont_second", "weighted:0.25",
                           "square_discrete", "square_continuous", "ball_discrete", "ball_continuous",
                           "square_recursive"}) {
    EXPECT_EQ(EstimatorId::parse(name).name(), name);
  }
  EXPECT_EQ(EstimatorId::parse("d1_lth:3").rank, 3);
  EXPECT_DOUBLE_EQ(EstimatorId::parse("weighted:0.25").alpha, 0.25);
  EXPECT_THROW(EstimatorId::parse("d1_lth"), DomainError);
  EXPECT_THROW(EstimatorId::parse("weighted:2"), DomainError);
  EXPECT_THROW(EstimatorId::parse("d1_max:1"), DomainError);
  EXPECT_THROW(EstimatorId::parse("nonsense"), DomainError);
}

TEST(EstimatorInfo, ApproximateFlags) {
  EXPECT_TRUE(estimator_info(EstimatorKind::square_discrete).approximate);
  EXPECT_TRUE(estimator_info(EstimatorKind::ball_discrete).approximate);
  EXPECT_FALSE(estimator_info(EstimatorKind::d1_max).approximate);
  EXPECT_FALSE(estimator_info(EstimatorKind::ball_continuous).approximate);
  EXPECT_EQ(estimator_info(EstimatorKind::ball_continuous).name, "ball_continuous");
}

TEST(ApplyEstimator, ComputesStatisticsFromObservations) {
  const GeometryDomain line{Mode::discrete, Shape::interval, 1, 0};
  const ObservationSet serials(1, {14, 3, 9, 27});
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::d1_max}, serials, line).estimate, 27 * 5.0 / 4 - 1);
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::d1_spread}, serials, line).estimate, 24 * 5.0 / 3 - 1);
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::d1_lth, 2}, serials, line).estimate, 14 * 5.0 / 3 - 1);
  const EstimateResult w = apply_estimator(EstimatorId::parse("weighted:0.5"), serials, line);
  EXPECT_DOUBLE_EQ(w.estimate, 0.5 * (27 * 5.0 / 4 - 1) + 0.5 * (14 * 5.0 / 3 - 1));

  const GeometryDomain square{Mode::discrete, Shape::square, 2, 0};
  const ObservationSet pairs(2, {3, 7, 5, 2, 1, 6});
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::square_discrete}, pairs, square).estimate, 7.0);

  const GeometryDomain ball{Mode::discrete, Shape::ball, 2, 0};
  const ObservationSet points(2, {3, 4, -1, 0});
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::ball_discrete}, points, ball).estimate,
                   std::sqrt(24.0 * 3.0 / 2.0));

  const GeometryDomain cball{Mode::continuous, Shape::ball, 2, 0};
  const ObservationSet cpoints(2, {0.3, 0.4, 0.1, 0.0});
  EXPECT_DOUBLE_EQ(apply_estimator(EstimatorId{EstimatorKind::ball_continuous}, cpoints, cball).estimate,
                   0.5 * 5.0 / 4.0);
}

TEST(ApplyEstimator, RejectsMismatchedGeometry) {
  const GeometryDomain square{Mode::discrete, Shape::square, 2, 0};
  const ObservationSet pairs(2, {3, 7, 5, 2});
  EXPECT_THROW(apply_estimator(EstimatorId{EstimatorKind::ball_discrete}, pairs, square), ConfigError);
  EXPECT_THROW(apply_estimator(EstimatorId{EstimatorKind::d1_max}, pairs, square), ConfigError);
  EXPECT_THROW(apply_estimator(EstimatorId{EstimatorKind::square_continuous}, pairs, square), ConfigError);
  EXPECT_THROW(require_compatible(EstimatorId{EstimatorKind::d1_lth, 4}, GeometryDomain{}, 3), ConfigError);
  EXPECT_NO_THROW(require_compatible(EstimatorId{EstimatorKind::square_recursive}, square, 2));
}

TEST(ExpectedValues, SquareDiscrete) {
  EXPECT_NEAR(expected_square_discrete(500, 10, 2).to_double(), 499.4719737043918, 1e-9);
  EXPECT_NEAR(expected_square_discrete(50, 20, 2).to_double(), 49.42445823335835, 1e-10);
  // L = 1 has expectation (k+1)/k (E[M] - 1).
  EXPECT_EQ(expected_square_discrete(30, 4, 1), Rational(5, 4) * (Rational(4 * 31, 5) - Rational(1)));
}

TEST(ExpectedValues, BallDiscrete) {
  EXPECT_NEAR(expected_ball_discrete(10000, 2, 10), 99.88395742396737, 1e-8);
}

}  // namespace
}  // namespace gtank
