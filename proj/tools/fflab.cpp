#include <CLI11.hpp>
#include <fstream>

#include "fflab/cli.hpp"
#include "fflab/report.hpp"

using fflab::cli::RunConfig;

namespace {

// Loads --config before CLI11 parses: file values become defaults, flags override.
void preload_config(int argc, char** argv, RunConfig& cfg) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
      break;
    }
    if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read config " + path);
  nlohmann::json doc = nlohmann::json::parse(is);
  fflab::cli::apply_json_config(cfg, doc);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->set_help_flag("--help", "print help");  // frees -h for the radius option
  sub->add_option("--config", "JSON config file; flags override its values")
      ->expected(1);
  sub->add_option("--q", cfg.q, "field order (prime power)");
  sub->add_option("--N", cfg.N, "degree");
  sub->add_option("--budget", cfg.budget, "max polynomials any operation may materialize");
  sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  sub->add_option("--out", cfg.out, "report output path");
}

void add_family(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family,
                  "interval | kprime-P | kprime-S | kprime-D | shifted-prime | rough");
  sub->add_option("--h", cfg.h, "interval radius");
  sub->add_option("--k", cfg.k, "factor count for the kprime families");
  sub->add_option("--z", cfg.z, "roughness threshold");
  sub->add_option("--shift", cfg.shift, "shift polynomial literal, e.g. q=3;[1]");
  sub->add_option("--center", cfg.center, "interval center literal (default t^N)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    preload_config(argc, argv, cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  CLI::App app{"function-field polynomial statistics and random multiplicative sums"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the exhaustive identity suites");
  add_common(verify, cfg);

  auto* count = app.add_subcommand("count", "emit counting-check tables as CSV");
  add_common(count, cfg);
  count->add_option("--kind", cfg.kind, "smooth | rough | window | rankin | shiu | hardy");
  count->add_option("--rule", cfg.rule, "multiplicative rule: one | pow:<y>");
  count->add_option("--epsilon", cfg.epsilon, "factor-count tail parameter");
  count->add_option("--beta", cfg.beta, "lower radius fraction for bound applicability");
  count->add_option("--center", cfg.center, "interval center literal (default t^N)");

  auto* energy = app.add_subcommand("energy", "exact multiplicative energy of one set");
  add_common(energy, cfg);
  add_family(energy, cfg);
  energy->add_option("--format", cfg.format, "json (default) or csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo moments of the random sum");
  add_common(simulate, cfg);
  add_family(simulate, cfg);
  simulate->add_option("--trials", cfg.trials, "Monte Carlo trials (>= 100)");
  auto* seed_opt = simulate->add_option("--seed", cfg.seed, "base RNG seed (required)");
  simulate->add_option("--trial-csv", cfg.trial_csv, "per-trial sample CSV path");

  auto* sweep = app.add_subcommand("sweep", "energy trends over a parameter ladder");
  add_common(sweep, cfg);
  add_family(sweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) cfg.command = "verify";
  if (count->parsed()) cfg.command = "count";
  if (energy->parsed()) cfg.command = "energy";
  if (simulate->parsed()) {
    cfg.command = "simulate";
    if (seed_opt->count() > 0) cfg.seed_set = true;
  }
  if (sweep->parsed()) cfg.command = "sweep";

  return fflab::cli::run_command(cfg);
}
