#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"

namespace gtank::cli {

struct EstimateArgs {
  std::string geometry = "line";
  std::string mode = "discrete";
  int dim = 0;  // 0: 1 for the line, 2 otherwise
  std::optional<long> k;
  std::optional<std::string> observations;
  std::optional<std::string> stat;
  std::vector<std::string> estimators;
};

struct SimulateArgs {
  std::string geometry = "line";
  std::string mode = "discrete";
  int dim = 0;
  std::optional<std::string> N;
  std::optional<std::string> r;
  long k = 0;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::vector<std::string> estimators;
  unsigned workers = 1;
  bool timing = false;
};

struct OracleArgs {
  long min_N = 1;
  long max_N = 25;
};

struct VerifyArgs {
  bool identities = false;
  bool euler_maclaurin = false;
  bool gauss_circle = false;
  bool falling_factorial = false;
  bool main_term = false;
  long max_N = 30;
  long max_r = 2000;
};

struct CompareArgs {
  long N = 50;
  long k = 2;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool recursive = false;
  double tol = 1e-9;
};

CommandOutput cmd_estimate(const EstimateArgs& args);
CommandOutput cmd_simulate(const SimulateArgs& args);
CommandOutput cmd_oracle(const OracleArgs& args);
CommandOutput cmd_verify(const VerifyArgs& args);
CommandOutput cmd_compare(const CompareArgs& args);

}  // namespace gtank::cli
