#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gtank/estimators.hpp"
#include "gtank/geometry.hpp"
#include "gtank/rational.hpp"
#include "gtank/rng.hpp"

namespace gtank {

/// Our own default; nothing upstream fixes a trial count.
inline constexpr std::uint64_t kDefaultTrials = 10'000;
/// Discrete balls with at most this many lattice points are sampled from a
/// materialised point list, larger ones by rejection from the cube.
inline constexpr std::uint64_t kBallMaterializeLimit = 10'000'000;
/// Trials are aggregated in fixed blocks of this size, so the reduction
/// order never depends on the worker count.
inline constexpr std::uint64_t kChunkTrials = 1024;

struct SamplerOptions {
  std::uint64_t materialize_limit = kBallMaterializeLimit;
};

/// Draws observation sets for one geometry. Discrete geometries give k
/// distinct points (Floyd's selection over the population index, or
/// duplicate rejection where the population is not indexed); continuous
/// geometries give k independent uniform points.
class Sampler {
 public:
  Sampler(const GeometryDomain& geometry, long k, const SamplerOptions& options = {});

  ObservationSet draw(TrialRng& rng) const;

  /// Lattice population size; 0 for continuous geometries.
  const BigInt& population() const { return population_; }
  bool materialized() const { return !ball_points_.empty(); }

 private:
  std::vector<std::int64_t> distinct_indices(TrialRng& rng, std::int64_t n) const;
  ObservationSet draw_by_rejection(TrialRng& rng) const;

  GeometryDomain geometry_;
  long k_;
  std::int64_t size_ = 0;  // N, or r for the ball
  std::int64_t r_sq_ = 0;
  BigInt population_ = 0;
  bool indexed_ = false;   // population fits an int64 index
  std::vector<std::int64_t> ball_points_;
};

ObservationSet sample_observation(const GeometryDomain& geometry, long k, TrialRng& rng);

struct SimConfig {
  GeometryDomain geometry;
  long k = 1;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t master_seed = 0;
  std::vector<EstimatorId> estimators;
  std::string rng_algorithm_id{kRngAlgorithmId};
  // Execution only; never changes the report.
  unsigned workers = 1;

  /// Throws DomainError / ConfigError for an invalid config and
  /// ResourceError when trials exceed GTANK_TRIAL_CAP.
  void validate() const;
};

struct RunningMoments {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;  // sum of squared deviations

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double standard_error() const { return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
  void merge(const RunningMoments& other);
  /// Two-pass mean and M2 of a block, with compensated sums.
  static RunningMoments of(const std::vector<double>& values);
};

struct EstimatorSummary {
  EstimatorId estimator;
  bool approximate = false;
  std::uint64_t evaluated = 0;
  std::uint64_t failed = 0;             // DomainError on a trial
  std::uint64_t degenerate = 0;
  std::uint64_t below_observation = 0;
  std::uint64_t not_converged = 0;
  double mean = 0;
  double variance = 0;
  double bias = 0;
  double standard_error = 0;
};

struct SimulationReport {
  SimConfig config;
  double true_parameter = 0;
  std::vector<EstimatorSummary> estimators;
  double wall_seconds = 0;  // not part of the deterministic payload
};

SimulationReport run_trials(const SimConfig& config);

struct MomentSummary {
  double mean = 0;
  double variance = 0;
  double standard_error = 0;
  double bias = 0;
};

struct ComparisonReport {
  long N = 0;
  long k = 0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  MomentSummary one_d;  // sqrt of est_d1_max over 2k draws from {1..N^2}
  MomentSummary two_d;  // est_square_discrete over k points of the N x N grid
  std::string winner;   // "1d", "2d" or "tie" (lower variance)
};

ComparisonReport compare_1d_2d(long N, long k, std::uint64_t trials, std::uint64_t master_seed,
                               unsigned workers = 1);

struct RecursiveReport {
  long N = 0;
  long k = 0;
  std::uint64_t trials = 0;
  double tol = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t converged = 0;         // both starts converged
  std::uint64_t iteration_errors = 0;  // negative radicand, counted not fatal
  std::uint64_t agree_within_tol = 0;  // among converged trials
  double max_disagreement = 0;
  double max_fixed_point_error = 0;    // vs the closed-form root, converged runs
  double mean_iterations = 0;
  double convergence_fraction = 0;
  MomentSummary recursive;  // started from max(maxX, maxY)
  MomentSummary direct;     // est_square_discrete on the same sample
};

/// Runs the recursive estimator from max(maxX, maxY) and from ten times
/// that on every trial.
RecursiveReport recursive_convergence_experiment(long N, long k, std::uint64_t trials, double tol,
                                                 std::uint64_t master_seed, unsigned workers = 1);

/// Accepted proposals out of `proposals` uniform draws from [-r, r]^L.
std::uint64_t ball_rejection_accepted(int dim, double r, std::uint64_t proposals, std::uint64_t seed);

std::uint64_t trial_cap_from_env();

}  // namespace gtank
