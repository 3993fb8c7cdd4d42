#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gtank/geometry.hpp"
#include "gtank/rational.hpp"

namespace gtank {

enum class EstimatorKind {
  d1_max,             // m (k+1)/k - 1
  d1_spread,          // s (k+1)/(k-1) - 1
  d1_lth,             // m (k+1)/(k-L+1) - 1
  d1_cont_max,        // m (k+1)/k
  d1_cont_second,     // m (k+1)/(k-1)
  weighted,           // alpha X_k + (1 - alpha) X_{k-1}
  square_discrete,    // (Lk+1)/(Lk) (m - 1), large-N approximation
  square_continuous,  // (Lk+1)/(Lk) m
  ball_discrete,      // sqrt((k+1)/k (m1 - 1)), large-r approximation, any L
  ball_continuous,    // (Lk+1)/(Lk) m2
  square_recursive,   // fixed point of N <- sqrt((maxX + N(maxY-1))(k+1)/k - 1)
};

struct EstimatorInfo {
  std::string_view name;
  std::string_view formula_id;
  std::string_view formula;
  bool approximate;
  std::string_view dropped_order;  // empty for exact formulas
};

const EstimatorInfo& estimator_info(EstimatorKind kind);

struct EstimatorId {
  EstimatorKind kind = EstimatorKind::d1_max;
  long rank = 1;       // L for d1_lth
  double alpha = 1.0;  // weight for `weighted`

  /// "d1_max", "d1_lth:2", "weighted:0.25", ...
  std::string name() const;
  static EstimatorId parse(std::string_view text);

  friend bool operator==(const EstimatorId&, const EstimatorId&) = default;
};

struct EstimateResult {
  double estimate = 0;
  EstimatorId estimator;
  std::vector<std::pair<std::string, double>> inputs;
  bool approximate = false;
  // Every observation sat at the minimum; the estimate carries no information.
  bool degenerate = false;
  // The large-N formulas can fall below the observed statistic for small m.
  bool below_observation = false;
  bool converged = true;
};

// One-dimensional, discrete {1..N}.
EstimateResult est_d1_max(long m, long k);
EstimateResult est_d1_spread(long s, long k);
EstimateResult est_d1_lth(long m, long k, long L);

// One-dimensional, continuous [0, N].
EstimateResult est_d1_cont(double m, long k);
EstimateResult est_d1_cont_second(double m, long k);

// Exact (co)variances of the unbiased rescalings X_k and X_{k-1}, for the
// discrete problem and its continuous analogue on [0, N].
struct VarianceFormulas {
  Rational var_Xk;
  Rational var_Xk1;
  Rational cov;
  Rational var_Xk_cont;
  Rational var_Xk1_cont;
  Rational cov_cont;
};
VarianceFormulas var_formulas(long N, long k);

/// Var(alpha A + (1 - alpha) B) = alpha^2 Var A + (1-alpha)^2 Var B + 2 alpha (1-alpha) Cov.
Rational weighted_variance(const Rational& alpha, const Rational& var_a, const Rational& var_b,
                           const Rational& cov);

struct AlphaResult {
  Rational alpha;      // minimiser on [0, 1]
  Rational variance;   // weighted_variance at alpha
  bool any_alpha = false;          // variance does not depend on alpha
  bool has_critical_point = false;
  Rational critical;   // (Var B - Cov) / (Var A + Var B - 2 Cov), when defined
};

/// Minimises the weighted variance over alpha in [0, 1]: the stationary
/// point is compared against both endpoints.
AlphaResult optimal_alpha(const Rational& var_a, const Rational& var_b, const Rational& cov);

/// Convex combination; throws DomainError for alpha outside [0, 1].
double weighted_estimate(double alpha, double x_a, double x_b);

// Multi-dimensional.
EstimateResult est_square_discrete(long m, long k, long L);
EstimateResult est_square_continuous(double m, long k, long L);
EstimateResult est_ball_discrete(long m1, long k);
EstimateResult est_ball_continuous(double m2, long k, long L);

struct RecursiveOptions {
  double tol = 1e-9;
  int max_iter = 200;
};

struct RecursiveResult {
  double estimate = 0;
  int iterations = 0;
  bool converged = false;
};

/// Iterates N <- sqrt((maxX + N (maxY - 1)) (k+1)/k - 1) from N0 until two
/// successive iterates differ by less than tol. Throws IterationError if
/// the radicand goes negative.
RecursiveResult est_square_recursive(long max_x, long max_y, long k, double n0,
                                     const RecursiveOptions& options = {});

/// Positive root of N^2 = (maxX + N (maxY - 1)) (k+1)/k - 1, the point the
/// iteration above converges to.
double square_recursive_fixed_point(long max_x, long max_y, long k);

/// Exact scaling factor of the closed-form estimators (k+1)/k, (Lk+1)/(Lk), ...
Rational scaling_factor(EstimatorKind kind, long k, long L = 1);

/// Applies an estimator to raw observations. Throws ConfigError if the
/// estimator does not fit the geometry.
EstimateResult apply_estimator(const EstimatorId& id, const ObservationSet& obs,
                               const GeometryDomain& geometry);
void require_compatible(const EstimatorId& id, const GeometryDomain& geometry, long k);
std::vector<EstimatorId> default_estimators(const GeometryDomain& geometry);

/// E[est_square_discrete] under exact sampling of k points from {1..N}^L.
Rational expected_square_discrete(long N, long k, long L);

/// E[est_ball_discrete] under exact sampling of k lattice points from the
/// ball of squared radius r_sq. An all-origin sample (only possible for
/// k = 1) contributes 0.
double expected_ball_discrete(long r_sq, int L, long k);

}  // namespace gtank
