#ifndef FFLAB_CLI_HPP
#define FFLAB_CLI_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fflab/budget.hpp"

namespace fflab::cli {

/// Parameters of one invocation. File config loads first, flags override.
struct RunConfig {
  std::string command;  // verify | count | energy | simulate | sweep

  std::uint64_t q = 2;
  int N = 4;
  int h = -1;
  int k = -1;
  int z = -1;

  std::string family = "interval";
  std::string shift;        // polynomial literal for shifted primes (default: 1)
  std::string center;       // interval center literal (default: t^N)
  std::string kind = "smooth";  // count tables: smooth|rough|window|rankin|shiu|hardy
  std::string rule = "one";     // multiplicative rule name
  double epsilon = 0.5;
  double beta = 0.25;

  std::uint64_t trials = 20000;
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::uint64_t budget = kDefaultBudget;
  int threads = 0;  // 0 = all cores

  std::string out;        // report path; empty = default per command
  std::string trial_csv;  // optional per-trial sample dump
  std::string format = "json";

  nlohmann::json ladder = nlohmann::json::array();
};

/// Merges a flat JSON config document into cfg (unknown keys rejected).
void apply_json_config(RunConfig& cfg, const nlohmann::json& doc);

/// Exit code contract: 0 success, 1 failed assertion/gate, 2 usage or budget error.
int run_command(const RunConfig& cfg);

}  // namespace fflab::cli

#endif
