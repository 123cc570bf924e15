#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "infoflow/config.hpp"
#include "infoflow/exact.hpp"
#include "infoflow/fit.hpp"
#include "infoflow/histogram.hpp"
#include "infoflow/walk.hpp"

namespace infoflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Name of the resolved-config echo written into every output directory.
inline constexpr const char* kConfigEcho = "run.conf";

// Each command writes its artifacts under config.out, prints a short summary
// to `out`, diagnostics to `err`, and returns one of the exit codes above.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

// File formats.

/// agent_id,parent_id,birth_step,likes,dislikes,reposts,references,lifetime,final_energy,censored
std::string outcomes_csv(std::span<const AgentOutcome> outcomes,
                         std::span<const BirthRecord> births = {});
/// bin,count,frequency
std::string histogram_csv(const Histogram& hist);
/// n,probability
std::string pmf_csv(const LikeCountPmf& pmf);
/// t,probability; a final row "censored" carries the survival mass.
std::string lifetime_csv(const LifetimePmf& pmf);
/// {"k", "lambda", "method", "objective", "ks", "n"}
std::string fit_report_json(const FitReport& report);
/// x,empirical,fitted with x at bin centres.
std::string plot_data_csv(const Histogram& hist, const WeibullParams& fitted);

/// A unit-width integer distribution read from a pmf or histogram CSV.
struct Distribution {
  long long first_bin = 0;
  std::vector<double> mass;  // raw mass per consecutive bin
};

/// Accepts `n,probability` or `bin,count[,frequency]` files. DataError when the
/// bins are not consecutive-or-increasing integers.
Distribution read_distribution_csv(const std::filesystem::path& path);

struct Comparison {
  long long first_bin = 0;
  std::vector<double> p;  // normalised
  std::vector<double> q;
  double total_variation = 0.0;
  double ks = 0.0;
};

Comparison compare_distributions(const Distribution& a, const Distribution& b);

}  // namespace infoflow
