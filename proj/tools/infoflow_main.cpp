// infoflow: simulate, exact, fit, ingest and compare subcommands.

#include <iostream>
#include <map>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "infoflow/commands.hpp"
#include "infoflow/config.hpp"
#include "infoflow/io.hpp"

namespace {

using infoflow::KeyValues;

struct Overrides {
  std::string config_path;
  int threads = 0;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

void add_value(CLI::App* cmd, Overrides& o, const std::string& flag, const std::string& key,
               const std::string& help) {
  cmd->add_option(flag, o.values[key], help);
}

void add_flag(CLI::App* cmd, Overrides& o, const std::string& flag, const std::string& key,
              const std::string& help) {
  cmd->add_flag(flag, o.flags[key], help);
}

// Flags win over the config file.
KeyValues merge(const Overrides& o) {
  KeyValues kv;
  if (!o.config_path.empty()) kv = infoflow::read_config_file(o.config_path);
  for (const auto& [key, value] : o.values) {
    if (!value.empty()) kv[key] = value;
  }
  for (const auto& [key, set] : o.flags) {
    if (set) kv[key] = "true";
  }
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message-as-agent information spread: simulation, exact like-count pmf, "
               "Weibull fitting and snapshot ingestion"};
  app.require_subcommand(1);

  Overrides o;
  auto common = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "Flat key = value config file");
    cmd->add_option("--out", o.values["out"], "Output directory");
    cmd->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  };

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo agents or a whole flow");
  common(simulate);
  add_value(simulate, o, "--seed", "seed", "Root seed (u64)");
  add_value(simulate, o, "--replicates", "replicates", "Independent agents to simulate");
  add_value(simulate, o, "--metric", "metric", "Histogram metric: likes, reposts, lifetime");
  add_flag(simulate, o, "--flow", "flow", "Simulate a flow (spontaneous births + repost copies)");
  add_value(simulate, o, "--horizon", "horizon", "Flow horizon in steps");
  add_value(simulate, o, "--max-agents", "max_agents", "Flow agent cap");

  auto* exact = app.add_subcommand("exact", "Exact like-count pmf");
  common(exact);
  add_flag(exact, o, "--enum", "enum", "Use exhaustive enumeration (T_max <= 14)");
  add_flag(exact, o, "--lifetime", "lifetime", "Also write the lifetime pmf");

  auto* fit = app.add_subcommand("fit", "Weibull fit of a histogram or sample file");
  common(fit);
  add_value(fit, o, "--input", "input", "Histogram CSV (bin,count,...) or one sample per line");
  add_value(fit, o, "--method", "method", "ls or mle");
  add_value(fit, o, "--bin-width", "bin_width", "Bin width when binning raw samples");

  auto* ingest = app.add_subcommand("ingest", "Snapshot CSV -> increments -> fit -> JSONL store");
  common(ingest);
  add_value(ingest, o, "--input", "input", "Snapshot CSV");
  add_value(ingest, o, "--store", "store", "JSONL store (default: <out>/results.jsonl)");
  add_value(ingest, o, "--mode", "mode", "increments or finals");

  auto* compare = app.add_subcommand("compare", "Distances between a pmf and a histogram");
  common(compare);
  add_value(compare, o, "--pmf", "pmf", "pmf CSV (n,probability) or histogram CSV");
  add_value(compare, o, "--hist", "hist", "histogram CSV (bin,count,frequency) or pmf CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return infoflow::kExitUsage;
  }

#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#endif

  infoflow::RunConfig config;
  try {
    config = infoflow::resolve_config(merge(o));
  } catch (const infoflow::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return infoflow::kExitUsage;
  }

  if (simulate->parsed()) return infoflow::cmd_simulate(config, std::cout, std::cerr);
  if (exact->parsed()) return infoflow::cmd_exact(config, std::cout, std::cerr);
  if (fit->parsed()) return infoflow::cmd_fit(config, std::cout, std::cerr);
  if (ingest->parsed()) return infoflow::cmd_ingest(config, std::cout, std::cerr);
  return infoflow::cmd_compare(config, std::cout, std::cerr);
}
