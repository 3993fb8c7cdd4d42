#include "cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gtank/errors.hpp"

namespace gtank::cli {
namespace {

constexpr int code(ExitCode c) { return static_cast<int>(c); }

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

template <class T>
void add_optional(CLI::App* cmd, const std::string& name, std::optional<T>& target, const std::string& help) {
  cmd->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"German tank problem estimators, exact oracles and Monte Carlo checks", "gtank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gtank 0.1.0");

  std::string format = "json";
  std::function<CommandOutput()> action;

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate N (or r) from observations or a statistic");
  estimate->add_option("--geometry", est.geometry, "line | square | ball")->check(
      CLI::IsMember({"line", "interval", "square", "ball", "circle"}));
  estimate->add_option("--mode", est.mode, "discrete | continuous")->check(CLI::IsMember({"discrete", "continuous"}));
  estimate->add_option("--dim", est.dim, "Dimension L (default 1 for line, 2 otherwise)");
  add_optional(estimate, "--k", est.k, "Sample size (required with --stat)");
  add_optional(estimate, "--observations", est.observations, "File with one point per line");
  add_optional(estimate, "--stat", est.stat, "Precomputed statistic: max, spread, m1 = max sum of squares, or m2 = max norm");
  estimate->add_option("--estimators", est.estimators, "e.g. d1_max,d1_lth:2,weighted:0.5")->delimiter(',');
  add_format(estimate, format);
  estimate->callback([&] { action = [&] { return cmd_estimate(est); }; });

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of one or more estimators");
  simulate->add_option("--geometry", sim.geometry, "line | square | ball")->check(
      CLI::IsMember({"line", "interval", "square", "ball", "circle"}));
  simulate->add_option("--mode", sim.mode, "discrete | continuous")->check(CLI::IsMember({"discrete", "continuous"}));
  simulate->add_option("--dim", sim.dim, "Dimension L");
  add_optional(simulate, "--N", sim.N, "Population maximum (line, square)");
  add_optional(simulate, "--r", sim.r, "Radius (ball)");
  simulate->add_option("--k", sim.k, "Sample size")->required();
  add_optional(simulate, "--trials", sim.trials, "Number of trials (default 10000)");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--estimators", sim.estimators, "Comma-separated estimator ids")->delimiter(',');
  simulate->add_option("--workers", sim.workers, "Worker threads (output does not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  simulate->add_flag("--timing", sim.timing, "Include wall-clock seconds (breaks byte-identical output)");
  add_format(simulate, format);
  simulate->callback([&] { action = [&] { return cmd_simulate(sim); }; });

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "Closed forms against full subset enumeration");
  oracle->add_option("--min-N", ora.min_N, "Smallest N");
  oracle->add_option("--max-N", ora.max_N, "Largest N (default 25)");
  add_format(oracle, format);
  oracle->callback([&] { action = [&] { return cmd_oracle(ora); }; });

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Identity, bound and lattice checks (all when none selected)");
  verify->add_flag("--identities", ver.identities, "Identities I-IV and the hockey stick");
  verify->add_flag("--euler-maclaurin", ver.euler_maclaurin, "Euler-Maclaurin bracketing");
  verify->add_flag("--falling-factorial", ver.falling_factorial, "Falling-factorial sandwich");
  verify->add_flag("--main-term", ver.main_term, "Main-term relative error of sum m^(Lk)");
  verify->add_flag("--gauss-circle", ver.gauss_circle, "Gauss circle annulus bound");
  verify->add_option("--max-N", ver.max_N, "Identity grid bound (default 30)");
  verify->add_option("--max-r", ver.max_r, "Largest radius for --gauss-circle (default 2000)");
  add_format(verify, format);
  verify->callback([&] { action = [&] { return cmd_verify(ver); }; });

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "1D (2k serials) vs 2D (k pairs) estimator variance");
  compare->add_option("--N", cmp.N, "Grid side N");
  compare->add_option("--k", cmp.k, "Number of pairs");
  add_optional(compare, "--trials", cmp.trials, "Paired trials (default 10000)");
  compare->add_option("--seed", cmp.seed, "Master seed");
  compare->add_option("--workers", cmp.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  compare->add_flag("--recursive", cmp.recursive, "Also run the recursive-estimator convergence experiment");
  compare->add_option("--tol", cmp.tol, "Recursive estimator tolerance");
  add_format(compare, format);
  compare->callback([&] { action = [&] { return cmd_compare(cmp); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int rc = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return rc == 0 ? 0 : code(ExitCode::usage);
  }

  try {
    const CommandOutput result = action();
    write_output(result, parse_format(format), out);
    return code(result.exit_code);
  } catch (const ResourceError& e) {
    err << "gtank: resource cap: " << e.what() << '\n';
    return code(ExitCode::resource_cap);
  } catch (const DomainError& e) {
    err << "gtank: " << e.what() << '\n';
    return code(ExitCode::usage);
  } catch (const ConfigError& e) {
    err << "gtank: " << e.what() << "\n(see `gtank <command> --help` for valid combinations)\n";
    return code(ExitCode::usage);
  }
}

}  // namespace gtank::cli
