#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "commands.hpp"
#include "gtank/asymptotics.hpp"
#include "gtank/binomial.hpp"
#include "gtank/distributions.hpp"
#include "gtank/errors.hpp"
#include "gtank/estimators.hpp"
#include "gtank/identities.hpp"
#include "gtank/lattice.hpp"
#include "gtank/oracle.hpp"
#include "gtank/simulator.hpp"

namespace gtank::cli {
namespace {

constexpr std::size_t kMaxListedFailures = 20;

class Check {
 public:
  explicit Check(std::string id) : id_(std::move(id)) {}

  void pass() { ++cases_; }
  void fail(Json counterexample) {
    ++cases_;
    ++failed_;
    if (failures_.size() < kMaxListedFailures) failures_.push_back(std::move(counterexample));
  }
  void skip(Json what) { skipped_.push_back(std::move(what)); }
  void record(bool ok, const std::function<Json()>& counterexample) {
    if (ok) {
      pass();
    } else {
      fail(counterexample());
    }
  }
  Json& detail() { return detail_; }

  bool failed() const { return failed_ > 0; }
  bool skipped() const { return !skipped_.empty(); }

  Json to_json() const {
    Json j{{"check", id_},
           {"cases", cases_},
           {"passed", cases_ - failed_},
           {"failed", failed_},
           {"failures", failures_},
           {"skipped", skipped_}};
    if (!detail_.is_null()) j["detail"] = detail_;
    return j;
  }

  std::vector<std::string> csv_row() const {
    return {id_, std::to_string(cases_), std::to_string(cases_ - failed_), std::to_string(failed_),
            std::to_string(skipped_.size()), failures_.empty() ? "" : failures_.front().dump()};
  }

 private:
  std::string id_;
  std::uint64_t cases_ = 0;
  std::uint64_t failed_ = 0;
  Json failures_ = Json::array();
  Json skipped_ = Json::array();
  Json detail_;
};

CommandOutput finish(const std::string& command, Json inputs, const std::vector<Check>& checks,
                     Json provenance) {
  CommandOutput out;
  out.record = envelope(command, std::move(inputs));
  out.record["results"]["checks"] = Json::array();
  out.table.header = {"check", "cases", "passed", "failed", "skipped", "first_failure"};
  bool failed = false;
  bool skipped = false;
  for (const auto& c : checks) {
    out.record["results"]["checks"].push_back(c.to_json());
    out.table.rows.push_back(c.csv_row());
    failed = failed || c.failed();
    skipped = skipped || c.skipped();
  }
  out.record["results"]["all_passed"] = !failed && !skipped;
  out.record["provenance"] = std::move(provenance);
  out.exit_code = failed ? ExitCode::check_failed : (skipped ? ExitCode::resource_cap : ExitCode::ok);
  return out;
}

Json check_provenance(std::initializer_list<const char*> ids) {
  Json p = Json::array();
  for (const char* id : ids) p.push_back(Json{{"check_id", id}, {"approximate", false}});
  return p;
}

Json nk(long N, long k) { return Json{{"N", N}, {"k", k}}; }

Json mismatch(Json where, const Rational& closed, const Rational& oracle) {
  where["closed_form"] = to_json(closed);
  where["oracle"] = to_json(oracle);
  return where;
}

// ----------------------------------------------------------------- verify

void verify_identities(long max_N, std::vector<Check>& checks) {
  Check one("identity.I"), two("identity.II"), three("identity.III"), four("identity.IV"),
      hockey("identity.hockey_stick");
  const auto run = [](Check& c, Identity id, std::initializer_list<long> params) {
    const std::vector<long> p(params);
    const IdentitySides sides = evaluate_identity(id, p);
    c.record(sides.holds(), [&] {
      return Json{{"params", p}, {"lhs", to_json(sides.lhs)}, {"rhs", to_json(sides.rhs)}};
    });
  };
  for (long N = 0; N <= max_N; ++N) {
    for (long k = 0; k <= N; ++k) {
      for (long b = 0; b <= k; ++b) {
        for (long c = 0; c <= k; ++c) run(one, Identity::I, {N, k, b, c});
      }
      for (long a = 1; a <= k; ++a) {
        run(two, Identity::II, {N, k, a});
        run(three, Identity::III, {N, k, a});
      }
      hockey.record(check_hockey_stick(N, k), [&] { return Json{{"n", N}, {"r", k}}; });
    }
  }
  for (long a = 0; a <= max_N; ++a) {
    for (long b = 0; b <= max_N; ++b) {
      for (long k = 0; k <= max_N; ++k) run(four, Identity::IV, {a, b, k});
    }
  }
  for (Check* c : {&one, &two, &three, &four, &hockey}) checks.push_back(std::move(*c));
}

std::vector<PowerSumSpec> em_specs() {
  std::vector<PowerSumSpec> specs;
  const std::array<std::pair<long, long>, 6> ranges{{{0, 10}, {1, 10}, {1, 100}, {7, 1000}, {1, 10000}, {0, 10000}}};
  for (int w = 0; w <= 12; ++w) {
    for (auto [a, b] : ranges) specs.push_back({w, 0, 0, a, b});
  }
  // Lower-bound shape m^(Lk) - k(k-1)/2 m^(Lk-L) of the falling-factorial sandwich.
  for (int L = 1; L <= 3; ++L) {
    for (int k = 2; L * k <= 12; ++k) {
      for (auto [a, b] : ranges) specs.push_back({L * k, Rational(k * (k - 1), 2), L * k - L, a, b});
    }
  }
  return specs;
}

void verify_euler_maclaurin(std::vector<Check>& checks) {
  Check c("euler_maclaurin.bracket");
  Json cases = Json::array();
  for (const PowerSumSpec& s : em_specs()) {
    const EMResult r = euler_maclaurin(s);
    Json row{{"w", s.w}, {"c", to_json(s.c)}, {"y", s.y}, {"a", s.a}, {"b", s.b},
             {"approximation", to_json(r.approximation)},
             {"remainder_bound", r.remainder_bound},
             {"exact", r.exact ? to_json(*r.exact) : Json()},
             {"error", r.exact ? (*r.exact - r.approximation).abs().to_double() : 0.0},
             {"brackets", r.brackets()}};
    c.record(r.brackets(), [&] { return row; });
    cases.push_back(std::move(row));
  }
  c.detail() = Json{{"cases", std::move(cases)}};
  checks.push_back(std::move(c));
}

void verify_falling_factorial(std::vector<Check>& checks) {
  Check c("falling_factorial.sandwich");
  for (long m = 1; m <= 20; ++m) {
    for (long L = 0; L <= 3; ++L) {
      const long base = static_cast<long>(std::lround(std::pow(m, L)));
      for (long k = 1; k <= base + 1; ++k) {
        const FallingFactorialBounds b = falling_factorial_bounds(m, L, k);
        c.record(b.lower <= b.exact && b.exact <= b.upper, [&] {
          return Json{{"m", m}, {"L", L}, {"k", k}, {"lower", b.lower.get_str()},
                      {"exact", b.exact.get_str()}, {"upper", b.upper.get_str()}};
        });
      }
    }
  }
  checks.push_back(std::move(c));
}

void verify_main_term(std::vector<Check>& checks) {
  Check mono("main_term.monotone"), spot("main_term.N1000_k2_L1");
  const std::array<long, 5> grid{50, 100, 200, 400, 800};
  Json table = Json::array();
  for (long k = 1; k <= 5; ++k) {
    for (long L = 1; L <= 3; ++L) {
      std::vector<double> errs;
      for (long N : grid) errs.push_back(main_term_relative_error(N, k, L));
      const bool ok = std::is_sorted(errs.rbegin(), errs.rend());
      mono.record(ok, [&] { return Json{{"k", k}, {"L", L}, {"relative_errors", errs}}; });
      table.push_back(Json{{"k", k}, {"L", L}, {"relative_errors", errs}});
    }
  }
  mono.detail() = Json{{"N", grid}, {"rows", std::move(table)}};
  const double e = main_term_relative_error(1000, 2, 1);
  spot.record(e <= 0.01, [&] { return Json{{"relative_error", e}}; });
  spot.detail() = Json{{"relative_error", e}};
  checks.push_back(std::move(mono));
  checks.push_back(std::move(spot));
}

void verify_gauss_circle(long max_r, std::vector<Check>& checks) {
  Check bound("gauss_circle.annulus_bound"), small("gauss_circle.small_counts");
  const LatticeOptions options = lattice_options_from_env();
  double worst_ratio = 0;
  long worst_r = 0;
  for (long r = 1; r <= max_r; ++r) {
    try {
      const GaussCircleError g = gauss_circle_error(r, options);
      const double limit = gauss_circle_annulus_bound(r);
      if (g.abs_error / limit > worst_ratio) {
        worst_ratio = g.abs_error / limit;
        worst_r = r;
      }
      bound.record(g.abs_error <= limit, [&] {
        return Json{{"r", r}, {"count", g.count.get_str()}, {"area", g.area}, {"bound", limit}};
      });
    } catch (const ResourceError& e) {
      bound.skip(Json{{"r", r}, {"reason", e.what()}, {"required", e.required()}, {"cap", e.cap()}});
    }
  }
  bound.detail() = Json{{"max_r", max_r}, {"worst_ratio", worst_ratio}, {"worst_r", worst_r}};
  for (auto [r, expected] : {std::pair<long, long>{1, 5}, {2, 13}}) {
    const BigInt count = count_ball(r * r, 2, options);
    small.record(count == expected, [&] { return Json{{"r", r}, {"count", count.get_str()}, {"expected", expected}}; });
  }
  checks.push_back(std::move(bound));
  checks.push_back(std::move(small));
}

}  // namespace

// ----------------------------------------------------------------- oracle

CommandOutput cmd_oracle(const OracleArgs& args) {
  if (args.min_N < 1 || args.max_N < args.min_N) throw DomainError("need 1 <= --min-N <= --max-N");
  const OracleOptions options = oracle_options_from_env();

  Check mean_max("oracle.mean_largest"), var_max("oracle.variance_largest"), mean_lth("oracle.mean_lth_largest"),
      var_second("oracle.variance_second_largest"), var_xk("oracle.var_Xk"), var_xk1("oracle.var_Xk1"),
      cov("oracle.cov_Xk_Xk1");

  for (long N = args.min_N; N <= args.max_N; ++N) {
    for (long k = 1; k <= N; ++k) {
      SubsetScan scan;
      try {
        scan = oracle_scan(N, k, options);
      } catch (const ResourceError& e) {
        Json what{{"N", N}, {"k", k}, {"reason", e.what()}, {"required", e.required()}, {"cap", e.cap()}};
        for (Check* c : {&mean_max, &var_max, &mean_lth, &var_second, &var_xk, &var_xk1, &cov}) c->skip(what);
        continue;
      }
      const MomentReport top = scan.moments(OrderStatistic::largest());
      const MomentReport closed = closed_moments_largest(N, k);
      mean_max.record(top.mean == closed.mean, [&] { return mismatch(nk(N, k), closed.mean, top.mean); });
      var_max.record(top.variance == closed.variance,
                     [&] { return mismatch(nk(N, k), closed.variance, top.variance); });
      for (long L = 1; L <= k; ++L) {
        const Rational want((N + 1) * (k - L + 1), k + 1);
        const Rational got = scan.moments(OrderStatistic::lth_largest(L)).mean;
        mean_lth.record(got == want, [&] {
          Json where = nk(N, k);
          where["L"] = L;
          return mismatch(where, want, got);
        });
      }
      if (k < 2) continue;
      const MomentReport second = scan.moments(OrderStatistic::second_largest());
      const MomentReport second_closed = closed_moments_lth(N, k, 2, options);
      var_second.record(second.variance == second_closed.variance,
                        [&] { return mismatch(nk(N, k), second_closed.variance, second.variance); });
      if (k >= N) continue;
      const VarianceFormulas f = var_formulas(N, k);
      const Rational up = Rational((k + 1) * (k + 1), k * k);
      const Rational up1 = Rational((k + 1) * (k + 1), (k - 1) * (k - 1));
      const Rational vxk = top.variance * up;
      const Rational vxk1 = second.variance * up1;
      const Rational c = scan.covariance_top_two();
      var_xk.record(vxk == f.var_Xk, [&] { return mismatch(nk(N, k), f.var_Xk, vxk); });
      var_xk1.record(vxk1 == f.var_Xk1, [&] { return mismatch(nk(N, k), f.var_Xk1, vxk1); });
      cov.record(c == f.cov, [&] { return mismatch(nk(N, k), f.cov, c); });
    }
  }
  std::vector<Check> checks{mean_max, var_max, mean_lth, var_second, var_xk, var_xk1, cov};
  return finish("oracle", Json{{"min_N", args.min_N}, {"max_N", args.max_N}, {"max_subsets", options.max_subsets}},
                checks,
                check_provenance({"oracle.mean_largest", "oracle.variance_largest", "oracle.mean_lth_largest",
                                  "oracle.variance_second_largest", "oracle.var_Xk", "oracle.var_Xk1",
                                  "oracle.cov_Xk_Xk1"}));
}

CommandOutput cmd_verify(const VerifyArgs& args) {
  const bool all = !(args.identities || args.euler_maclaurin || args.gauss_circle || args.falling_factorial ||
                     args.main_term);
  if (args.max_N < 0) throw DomainError("--max-N must be >= 0");
  if (args.max_r < 1) throw DomainError("--max-r must be >= 1");
  std::vector<Check> checks;
  Json selected = Json::array();
  if (all || args.identities) {
    selected.push_back("identities");
    verify_identities(args.max_N, checks);
  }
  if (all || args.euler_maclaurin) {
    selected.push_back("euler_maclaurin");
    verify_euler_maclaurin(checks);
  }
  if (all || args.falling_factorial) {
    selected.push_back("falling_factorial");
    verify_falling_factorial(checks);
  }
  if (all || args.main_term) {
    selected.push_back("main_term");
    verify_main_term(checks);
  }
  if (all || args.gauss_circle) {
    selected.push_back("gauss_circle");
    verify_gauss_circle(args.max_r, checks);
  }
  Json provenance = Json::array();
  for (const auto& c : checks) provenance.push_back(Json{{"check_id", c.to_json()["check"]}, {"approximate", false}});
  return finish("verify", Json{{"checks", selected}, {"max_N", args.max_N}, {"max_r", args.max_r}}, checks,
                provenance);
}

// ---------------------------------------------------------------- compare

namespace {

Json moments_json(const MomentSummary& m) {
  return Json{{"mean", m.mean}, {"variance", m.variance}, {"standard_error", m.standard_error}, {"bias", m.bias}};
}

std::vector<std::string> moments_row(const std::string& name, const MomentSummary& m) {
  return {name, csv_number(m.mean), csv_number(m.variance), csv_number(m.standard_error), csv_number(m.bias)};
}

}  // namespace

CommandOutput cmd_compare(const CompareArgs& args) {
  const std::uint64_t trials = args.trials.value_or(kDefaultTrials);
  const ComparisonReport c = compare_1d_2d(args.N, args.k, trials, args.seed, args.workers);

  Json inputs{{"N", args.N}, {"k", args.k}, {"trials", trials}, {"seed", args.seed}};
  if (args.recursive) inputs["tol"] = args.tol;
  CommandOutput out;
  out.record = envelope("compare", inputs);
  Json& results = out.record["results"];
  results["trials_source"] = args.trials ? "argument" : "default";
  results["one_d"] = moments_json(c.one_d);
  results["two_d"] = moments_json(c.two_d);
  results["winner"] = c.winner;
  out.table.header = {"method", "mean", "variance", "standard_error", "bias"};
  out.table.rows.push_back(moments_row("one_d", c.one_d));
  out.table.rows.push_back(moments_row("two_d", c.two_d));

  Json& prov = out.record["provenance"];
  for (auto kind : {EstimatorKind::d1_max, EstimatorKind::square_discrete}) {
    const EstimatorInfo& info = estimator_info(kind);
    prov.push_back(Json{{"estimator", std::string(info.name)},
                        {"formula_id", std::string(info.formula_id)},
                        {"approximate", info.approximate}});
  }

  if (args.recursive) {
    const RecursiveReport r =
        recursive_convergence_experiment(args.N, args.k, trials, args.tol, args.seed, args.workers);
    results["recursive_experiment"] = Json{{"converged", r.converged},
                                           {"convergence_fraction", r.convergence_fraction},
                                           {"iteration_errors", r.iteration_errors},
                                           {"agree_within_tol", r.agree_within_tol},
                                           {"max_disagreement", r.max_disagreement},
                                           {"max_fixed_point_error", r.max_fixed_point_error},
                                           {"mean_iterations", r.mean_iterations},
                                           {"recursive", moments_json(r.recursive)},
                                           {"direct", moments_json(r.direct)}};
    out.table.rows.push_back(moments_row("recursive", r.recursive));
    out.table.rows.push_back(moments_row("direct", r.direct));
    const EstimatorInfo& info = estimator_info(EstimatorKind::square_recursive);
    prov.push_back(Json{{"estimator", std::string(info.name)},
                        {"formula_id", std::string(info.formula_id)},
                        {"approximate", info.approximate}});
  }
  return out;
}

}  // namespace gtank::cli
