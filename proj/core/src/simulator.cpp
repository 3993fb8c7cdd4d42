#include "gtank/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

#include "gtank/config.hpp"
#include "gtank/errors.hpp"
#include "gtank/lattice.hpp"

namespace gtank {
namespace {

constexpr std::int64_t kIndexLimit = std::int64_t{1} << 62;

// Neumaier's compensated summation.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Calls fn(chunk, first_trial, end_trial) for every fixed-size block of
// trials. Each chunk writes only its own slot, so any worker count yields
// the same per-chunk results.
template <class Fn>
void for_each_chunk(std::uint64_t trials, unsigned workers, Fn&& fn) {
  const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  const auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkTrials;
    fn(c, begin, std::min(trials, begin + kChunkTrials));
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) {
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

MomentSummary summarize(const RunningMoments& m, double truth) {
  return {m.mean, m.variance(), m.standard_error(), m.mean - truth};
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const std::uint64_t cap = trial_cap_from_env();
  if (trials > cap) {
    throw ResourceError("trials " + std::to_string(trials) + " exceed the cap of " + std::to_string(cap) +
                            " (GTANK_TRIAL_CAP)",
                        trials, cap);
  }
}

}  // namespace

std::uint64_t trial_cap_from_env() { return env_u64("GTANK_TRIAL_CAP", 10'000'000); }

// ---------------------------------------------------------------- sampling

Sampler::Sampler(const GeometryDomain& geometry, long k, const SamplerOptions& options)
    : geometry_(geometry), k_(k) {
  geometry_.validate();
  if (k < 1) throw DomainError("k must be >= 1");
  if (geometry_.mode == Mode::continuous) return;

  size_ = geometry_.integer_size();
  switch (geometry_.shape) {
    case Shape::interval:
      population_ = BigInt(static_cast<long>(size_));
      break;
    case Shape::square:
      population_ = count_square(static_cast<long>(size_), geometry_.dim);
      break;
    case Shape::ball:
      if (size_ > 3'000'000'000LL) throw DomainError("ball radius too large");
      r_sq_ = size_ * size_;
      population_ = count_ball(r_sq_, geometry_.dim, lattice_options_from_env());
      break;
  }
  if (population_ < k) {
    throw DomainError("k = " + std::to_string(k) + " exceeds the population of " + population_.get_str() +
                      " lattice points");
  }
  indexed_ = population_ < BigInt(static_cast<long>(kIndexLimit));
  if (geometry_.shape == Shape::ball) {
    indexed_ = population_ <= BigInt(static_cast<unsigned long>(options.materialize_limit));
    if (indexed_) ball_points_ = ball_points(r_sq_, geometry_.dim, options.materialize_limit);
  }
}

std::vector<std::int64_t> Sampler::distinct_indices(TrialRng& rng, std::int64_t n) const {
  // Floyd: one draw per selected element, no shuffle of the population.
  std::vector<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k_));
  std::unordered_set<std::int64_t> seen;
  const bool small = k_ <= 64;
  const auto contains = [&](std::int64_t v) {
    if (small) return std::find(chosen.begin(), chosen.end(), v) != chosen.end();
    return seen.count(v) != 0;
  };
  for (std::int64_t j = n - k_; j < n; ++j) {
    const std::int64_t t = rng.uniform_int(0, j);
    const std::int64_t pick = contains(t) ? j : t;
    chosen.push_back(pick);
    if (!small) seen.insert(pick);
  }
  return chosen;
}

ObservationSet Sampler::draw_by_rejection(TrialRng& rng) const {
  const int dim = geometry_.dim;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(k_ * dim));
  std::vector<std::int64_t> p(static_cast<std::size_t>(dim));
  while (static_cast<long>(seen.size()) < k_) {
    std::int64_t sum_sq = 0;
    for (auto& x : p) {
      if (geometry_.shape == Shape::ball) {
        x = rng.uniform_int(-size_, size_);
        sum_sq += x * x;
      } else {
        x = rng.uniform_int(1, size_);
      }
    }
    if (geometry_.shape == Shape::ball && sum_sq > r_sq_) continue;
    if (!seen.insert(p).second) continue;
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return ObservationSet(dim, std::move(coords));
}

ObservationSet Sampler::draw(TrialRng& rng) const {
  const int dim = geometry_.dim;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(k_ * dim));

  if (geometry_.mode == Mode::continuous) {
    const double s = geometry_.size;
    for (long i = 0; i < k_; ++i) {
      if (geometry_.shape != Shape::ball) {
        for (int d = 0; d < dim; ++d) coords.push_back(rng.uniform_real(0.0, s));
        continue;
      }
      std::vector<double> p(static_cast<std::size_t>(dim));
      for (;;) {
        double sum_sq = 0;
        for (auto& x : p) {
          x = rng.uniform_real(-s, s);
          sum_sq += x * x;
        }
        if (sum_sq <= s * s) break;
      }
      coords.insert(coords.end(), p.begin(), p.end());
    }
    return ObservationSet(dim, std::move(coords));
  }

  if (!indexed_) return draw_by_rejection(rng);

  const std::int64_t n = population_.get_si();
  for (std::int64_t idx : distinct_indices(rng, n)) {
    switch (geometry_.shape) {
      case Shape::interval:
        coords.push_back(static_cast<double>(idx + 1));
        break;
      case Shape::square:
        for (int d = 0; d < dim; ++d) {
          coords.push_back(static_cast<double>(idx % size_ + 1));
          idx /= size_;
        }
        break;
      case Shape::ball: {
        const auto at = static_cast<std::size_t>(idx) * static_cast<std::size_t>(dim);
        for (int d = 0; d < dim; ++d) coords.push_back(static_cast<double>(ball_points_[at + static_cast<std::size_t>(d)]));
        break;
      }
    }
  }
  return ObservationSet(dim, std::move(coords));
}

ObservationSet sample_observation(const GeometryDomain& geometry, long k, TrialRng& rng) {
  return Sampler(geometry, k).draw(rng);
}

std::uint64_t ball_rejection_accepted(int dim, double r, std::uint64_t proposals, std::uint64_t seed) {
  if (dim < 1 || !(r > 0)) throw DomainError("need dim >= 1 and r > 0");
  TrialRng rng(seed);
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < proposals; ++i) {
    double sum_sq = 0;
    for (int d = 0; d < dim; ++d) {
      const double x = rng.uniform_real(-r, r);
      sum_sq += x * x;
    }
    if (sum_sq <= r * r) ++accepted;
  }
  return accepted;
}

// ------------------------------------------------------------- aggregation

void RunningMoments::merge(const RunningMoments& other) {
  if (other.n == 0) return;
  if (n == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(n + other.n);
  const double delta = other.mean - mean;
  mean += delta * static_cast<double>(other.n) / total;
  m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
  n += other.n;
}

RunningMoments RunningMoments::of(const std::vector<double>& values) {
  RunningMoments out;
  out.n = values.size();
  if (values.empty()) return out;
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  out.mean = sum.value() / static_cast<double>(out.n);
  CompensatedSum squares;
  for (double v : values) squares.add((v - out.mean) * (v - out.mean));
  out.m2 = squares.value();
  return out;
}

void SimConfig::validate() const {
  geometry.validate();
  if (k < 1) throw DomainError("k must be >= 1");
  if (rng_algorithm_id != kRngAlgorithmId) {
    throw ConfigError("unsupported rng_algorithm_id '" + rng_algorithm_id + "'");
  }
  for (const auto& id : estimators) require_compatible(id, geometry, k);
  check_trials(trials);
}

SimulationReport run_trials(const SimConfig& input) {
  const auto started = std::chrono::steady_clock::now();
  SimulationReport report;
  report.config = input;
  SimConfig& config = report.config;
  if (config.estimators.empty()) config.estimators = default_estimators(config.geometry);
  config.validate();
  report.true_parameter = config.geometry.size;

  const Sampler sampler(config.geometry, config.k);
  const std::size_t e_count = config.estimators.size();

  struct Chunk {
    std::vector<RunningMoments> moments;
    std::vector<EstimatorSummary> counts;
  };
  std::vector<Chunk> chunks((config.trials + kChunkTrials - 1) / kChunkTrials);

  for_each_chunk(config.trials, config.workers, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::vector<double>> values(e_count);
    for (auto& v : values) v.reserve(static_cast<std::size_t>(end - begin));
    Chunk out;
    out.counts.resize(e_count);
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(child_seed(config.master_seed, t));
      const ObservationSet obs = sampler.draw(rng);
      for (std::size_t e = 0; e < e_count; ++e) {
        EstimatorSummary& tally = out.counts[e];
        try {
          const EstimateResult r = apply_estimator(config.estimators[e], obs, config.geometry);
          values[e].push_back(r.estimate);
          tally.degenerate += r.degenerate;
          tally.below_observation += r.below_observation;
          tally.not_converged += !r.converged;
        } catch (const DomainError&) {
          ++tally.failed;
        } catch (const IterationError&) {
          ++tally.failed;
        }
      }
    }
    for (const auto& v : values) out.moments.push_back(RunningMoments::of(v));
    chunks[c] = std::move(out);
  });

  for (std::size_t e = 0; e < e_count; ++e) {
    EstimatorSummary s;
    s.estimator = config.estimators[e];
    s.approximate = estimator_info(s.estimator.kind).approximate;
    RunningMoments total;
    for (const Chunk& chunk : chunks) {
      total.merge(chunk.moments[e]);
      s.failed += chunk.counts[e].failed;
      s.degenerate += chunk.counts[e].degenerate;
      s.below_observation += chunk.counts[e].below_observation;
      s.not_converged += chunk.counts[e].not_converged;
    }
    s.evaluated = total.n;
    s.mean = total.mean;
    s.variance = total.variance();
    s.standard_error = total.standard_error();
    s.bias = total.mean - report.true_parameter;
    report.estimators.push_back(s);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

// -------------------------------------------------------------- experiments

ComparisonReport compare_1d_2d(long N, long k, std::uint64_t trials, std::uint64_t master_seed,
                               unsigned workers) {
  if (N < 1 || k < 1) throw DomainError("need N >= 1 and k >= 1");
  if (N > 3'000'000'000L || 2 * k > N * N) throw DomainError("need 2k <= N^2");
  check_trials(trials);

  const Sampler grid({Mode::discrete, Shape::square, 2, static_cast<double>(N)}, k);
  const Sampler line({Mode::discrete, Shape::interval, 1, static_cast<double>(N * N)}, 2 * k);

  struct Chunk {
    RunningMoments one_d, two_d;
  };
  std::vector<Chunk> chunks((trials + kChunkTrials - 1) / kChunkTrials);
  for_each_chunk(trials, workers, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    std::vector<double> a, b;
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(child_seed(master_seed, t));
      const ObservationSet pairs = grid.draw(rng);
      b.push_back(est_square_discrete(std::lround(pairs.max_component()), k, 2).estimate);
      const ObservationSet serials = line.draw(rng);
      a.push_back(std::sqrt(est_d1_max(std::lround(serials.max_component()), 2 * k).estimate));
    }
    chunks[c] = {RunningMoments::of(a), RunningMoments::of(b)};
  });

  RunningMoments one_d, two_d;
  for (const Chunk& chunk : chunks) {
    one_d.merge(chunk.one_d);
    two_d.merge(chunk.two_d);
  }
  ComparisonReport out{N, k, trials, master_seed, summarize(one_d, static_cast<double>(N)),
                       summarize(two_d, static_cast<double>(N)), ""};
  out.winner = out.one_d.variance < out.two_d.variance   ? "1d"
               : out.two_d.variance < out.one_d.variance ? "2d"
                                                         : "tie";
  return out;
}

RecursiveReport recursive_convergence_experiment(long N, long k, std::uint64_t trials, double tol,
                                                 std::uint64_t master_seed, unsigned workers) {
  if (!(tol > 0)) throw DomainError("tol must be > 0");
  check_trials(trials);
  const Sampler grid({Mode::discrete, Shape::square, 2, static_cast<double>(N)}, k);
  const RecursiveOptions options{tol, 200};

  struct Chunk {
    RunningMoments recursive, direct;
    std::uint64_t converged = 0, errors = 0, agree = 0, iterations = 0, iterated = 0;
    double max_gap = 0, max_root_error = 0;
  };
  std::vector<Chunk> chunks((trials + kChunkTrials - 1) / kChunkTrials);
  for_each_chunk(trials, workers, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    Chunk out;
    std::vector<double> rec, dir;
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(child_seed(master_seed, t));
      const ObservationSet obs = grid.draw(rng);
      const long mx = std::lround(obs.max_along(0));
      const long my = std::lround(obs.max_along(1));
      const double start = static_cast<double>(std::max(mx, my));
      dir.push_back(est_square_discrete(std::max(mx, my), k, 2).estimate);
      try {
        const RecursiveResult low = est_square_recursive(mx, my, k, start, options);
        const RecursiveResult high = est_square_recursive(mx, my, k, 10 * start, options);
        rec.push_back(low.estimate);
        out.iterations += static_cast<std::uint64_t>(low.iterations);
        ++out.iterated;
        if (low.converged && high.converged) {
          ++out.converged;
          const double gap = std::abs(low.estimate - high.estimate);
          out.max_gap = std::max(out.max_gap, gap);
          out.agree += gap <= tol;
          const double root = square_recursive_fixed_point(mx, my, k);
          out.max_root_error = std::max({out.max_root_error, std::abs(low.estimate - root),
                                         std::abs(high.estimate - root)});
        }
      } catch (const IterationError&) {
        ++out.errors;
      }
    }
    out.recursive = RunningMoments::of(rec);
    out.direct = RunningMoments::of(dir);
    chunks[c] = std::move(out);
  });

  RecursiveReport out;
  out.N = N;
  out.k = k;
  out.trials = trials;
  out.tol = tol;
  out.master_seed = master_seed;
  RunningMoments rec, dir;
  std::uint64_t iterations = 0, iterated = 0;
  for (const Chunk& chunk : chunks) {
    rec.merge(chunk.recursive);
    dir.merge(chunk.direct);
    out.converged += chunk.converged;
    out.iteration_errors += chunk.errors;
    out.agree_within_tol += chunk.agree;
    out.max_disagreement = std::max(out.max_disagreement, chunk.max_gap);
    out.max_fixed_point_error = std::max(out.max_fixed_point_error, chunk.max_root_error);
    iterations += chunk.iterations;
    iterated += chunk.iterated;
  }
  out.mean_iterations = iterated ? static_cast<double>(iterations) / static_cast<double>(iterated) : 0.0;
  out.convergence_fraction = static_cast<double>(out.converged) / static_cast<double>(trials);
  out.recursive = summarize(rec, static_cast<double>(N));
  out.direct = summarize(dir, static_cast<double>(N));
  return out;
}

}  // namespace gtank
