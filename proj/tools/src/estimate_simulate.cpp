#include <cmath>

#include "commands.hpp"
#include "gtank/errors.hpp"
#include "gtank/estimators.hpp"
#include "gtank/simulator.hpp"
#include "observations.hpp"

namespace gtank::cli {
namespace {

GeometryDomain parse_geometry(const std::string& geometry, const std::string& mode, int dim) {
  GeometryDomain g;
  g.shape = parse_shape(geometry);
  g.mode = parse_mode(mode);
  g.dim = dim != 0 ? dim : (g.shape == Shape::interval ? 1 : 2);
  if (g.dim < 1) throw DomainError("--dim must be >= 1");
  if (g.shape == Shape::interval && g.dim != 1) throw DomainError("the line geometry has --dim 1");
  return g;
}

std::vector<EstimatorId> parse_estimators(const std::vector<std::string>& names, const GeometryDomain& g) {
  if (names.empty()) return default_estimators(g);
  std::vector<EstimatorId> out;
  for (const auto& n : names) out.push_back(EstimatorId::parse(n));
  return out;
}

Json provenance_entry(const EstimatorId& id) {
  const EstimatorInfo& info = estimator_info(id.kind);
  Json p{{"estimator", id.name()},
         {"formula_id", std::string(info.formula_id)},
         {"formula", std::string(info.formula)},
         {"approximate", info.approximate}};
  if (!info.dropped_order.empty()) p["dropped_order"] = std::string(info.dropped_order);
  return p;
}

Json geometry_json(const GeometryDomain& g) {
  return Json{{"geometry", std::string(to_string(g.shape))},
              {"mode", std::string(to_string(g.mode))},
              {"dim", g.dim}};
}

// Applies an estimator to a single summary statistic.
EstimateResult from_stat(const EstimatorId& id, double v, long k, const GeometryDomain& g) {
  const long m = std::lround(v);
  switch (id.kind) {
    case EstimatorKind::d1_max: return est_d1_max(m, k);
    case EstimatorKind::d1_spread: return est_d1_spread(m, k);
    case EstimatorKind::d1_lth: return est_d1_lth(m, k, id.rank);
    case EstimatorKind::d1_cont_max: return est_d1_cont(v, k);
    case EstimatorKind::d1_cont_second: return est_d1_cont_second(v, k);
    case EstimatorKind::square_discrete: return est_square_discrete(m, k, g.dim);
    case EstimatorKind::square_continuous: return est_square_continuous(v, k, g.dim);
    case EstimatorKind::ball_discrete: return est_ball_discrete(m, k);
    case EstimatorKind::ball_continuous: return est_ball_continuous(v, k, g.dim);
    case EstimatorKind::weighted:
    case EstimatorKind::square_recursive:
      break;
  }
  throw DomainError("estimator " + id.name() + " needs --observations, not a single --stat");
}

}  // namespace

CommandOutput cmd_estimate(const EstimateArgs& args) {
  const GeometryDomain g = parse_geometry(args.geometry, args.mode, args.dim);
  if (args.observations.has_value() == args.stat.has_value()) {
    throw DomainError("give exactly one of --observations and --stat");
  }
  const std::vector<EstimatorId> ids = parse_estimators(args.estimators, g);

  Json inputs = geometry_json(g);
  std::vector<EstimateResult> results;
  long k = 0;
  if (args.stat) {
    if (!args.k) throw DomainError("--stat needs --k");
    k = *args.k;
    if (k < 1) throw DomainError("--k must be >= 1");
    const double v = parse_value(*args.stat, g.mode);
    inputs["k"] = k;
    inputs["stat"] = v;
    for (const auto& id : ids) {
      require_compatible(id, g, k);
      results.push_back(from_stat(id, v, k, g));
    }
  } else {
    const ObservationSet obs = read_observations_file(*args.observations, g.dim, g.mode);
    k = static_cast<long>(obs.size());
    if (args.k && *args.k != k) {
      throw DomainError("--k " + std::to_string(*args.k) + " disagrees with the " + std::to_string(k) +
                        " points in the observations file");
    }
    inputs["k"] = k;
    inputs["observations"] = *args.observations;
    for (const auto& id : ids) results.push_back(apply_estimator(id, obs, g));
  }

  CommandOutput out;
  out.record = envelope("estimate", inputs);
  Json& list = out.record["results"]["estimates"] = Json::array();
  out.table.header = {"estimator", "estimate", "approximate", "degenerate", "below_observation",
                      "converged", "formula_id"};
  for (const auto& r : results) {
    Json stat = Json::object();
    for (const auto& [name, value] : r.inputs) stat[name] = value;
    list.push_back(Json{{"estimator", r.estimator.name()},
                        {"estimate", r.estimate},
                        {"statistic", stat},
                        {"approximate", r.approximate},
                        {"degenerate", r.degenerate},
                        {"below_observation", r.below_observation},
                        {"converged", r.converged}});
    out.record["provenance"].push_back(provenance_entry(r.estimator));
    out.table.rows.push_back({r.estimator.name(), csv_number(r.estimate), csv_bool(r.approximate),
                              csv_bool(r.degenerate), csv_bool(r.below_observation),
                              csv_bool(r.converged),
                              std::string(estimator_info(r.estimator.kind).formula_id)});
  }
  return out;
}

CommandOutput cmd_simulate(const SimulateArgs& args) {
  SimConfig config;
  config.geometry = parse_geometry(args.geometry, args.mode, args.dim);
  const bool ball = config.geometry.shape == Shape::ball;
  const auto& size_flag = ball ? args.r : args.N;
  if (!size_flag) throw DomainError(ball ? "the ball geometry needs --r" : "this geometry needs --N");
  if (ball ? args.N.has_value() : args.r.has_value()) {
    throw DomainError(ball ? "the ball geometry takes --r, not --N" : "--r applies only to the ball");
  }
  config.geometry.size = parse_value(*size_flag, config.geometry.mode);
  config.k = args.k;
  config.trials = args.trials.value_or(kDefaultTrials);
  config.master_seed = args.seed;
  config.estimators = parse_estimators(args.estimators, config.geometry);
  config.workers = args.workers;

  const SimulationReport report = run_trials(config);

  Json inputs = geometry_json(config.geometry);
  inputs[ball ? "r" : "N"] = config.geometry.size;
  inputs["k"] = config.k;
  inputs["trials"] = config.trials;
  inputs["seed"] = config.master_seed;
  inputs["estimators"] = Json::array();
  for (const auto& id : config.estimators) inputs["estimators"].push_back(id.name());

  CommandOutput out;
  out.record = envelope("simulate", inputs);
  Json& results = out.record["results"];
  results["true_parameter"] = report.true_parameter;
  results["trials"] = config.trials;
  results["trials_source"] = args.trials ? "argument" : "default";
  results["master_seed"] = config.master_seed;
  results["rng_algorithm_id"] = config.rng_algorithm_id;
  results["estimators"] = Json::array();
  out.table.header = {"estimator", "mean", "variance", "bias", "standard_error", "evaluated", "failed",
                      "degenerate", "below_observation", "not_converged", "approximate",
                      "true_parameter", "trials", "seed", "rng_algorithm_id"};
  for (const auto& s : report.estimators) {
    results["estimators"].push_back(Json{{"estimator", s.estimator.name()},
                                         {"mean", s.mean},
                                         {"variance", s.variance},
                                         {"bias", s.bias},
                                         {"standard_error", s.standard_error},
                                         {"evaluated", s.evaluated},
                                         {"failed", s.failed},
                                         {"degenerate", s.degenerate},
                                         {"below_observation", s.below_observation},
                                         {"not_converged", s.not_converged},
                                         {"approximate", s.approximate}});
    out.record["provenance"].push_back(provenance_entry(s.estimator));
    out.table.rows.push_back({s.estimator.name(), csv_number(s.mean), csv_number(s.variance),
                              csv_number(s.bias), csv_number(s.standard_error),
                              std::to_string(s.evaluated), std::to_string(s.failed),
                              std::to_string(s.degenerate), std::to_string(s.below_observation),
                              std::to_string(s.not_converged), csv_bool(s.approximate),
                              csv_number(report.true_parameter), std::to_string(config.trials),
                              std::to_string(config.master_seed), config.rng_algorithm_id});
  }
  if (args.timing) {
    results["wall_seconds"] = report.wall_seconds;
    out.table.header.push_back("wall_seconds");
    for (auto& row : out.table.rows) row.push_back(csv_number(report.wall_seconds));
  }
  return out;
}

}  // namespace gtank::cli
