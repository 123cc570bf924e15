#include "infoflow/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "infoflow/ingest.hpp"
#include "infoflow/io.hpp"

namespace infoflow {

namespace fs = std::filesystem;

namespace {

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

void prepare_out(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw DataError("cannot create output directory " + config.out + ": " + ec.message());
  write_file_atomic(fs::path(config.out) / kConfigEcho, echo_config(config));
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc{} && res.ptr == t.data() + t.size();
}

bool is_integer_label(double v) { return std::isfinite(v) && v == std::floor(v); }

/// A data file for `fit`: either a histogram CSV or a list of sample values.
struct FitInput {
  bool is_histogram = false;
  Histogram hist;
  std::vector<double> samples;
};

FitInput read_fit_input(const fs::path& path, double bin_width) {
  const auto lines = read_lines(path);
  std::vector<std::string> rows;
  for (const auto& l : lines) {
    if (!trim(l).empty()) rows.push_back(l);
  }
  if (rows.empty()) throw DataError(path.string() + ": no data");

  FitInput input;
  const auto header = split_csv_line(rows.front());
  if (trim(header.front()) == "bin") {
    input.is_histogram = true;
    const Distribution d = read_distribution_csv(path);
    if (d.first_bin < 0) throw DataError(path.string() + ": histogram bins must be >= 0");
    input.hist.counts.assign(static_cast<std::size_t>(d.first_bin), 0.0);
    input.hist.counts.insert(input.hist.counts.end(), d.mass.begin(), d.mass.end());
    if (input.hist.counts.empty() || !(input.hist.total() > 0.0)) {
      throw DataError(path.string() + ": histogram has no mass");
    }
    return input;
  }

  std::size_t first = 0;
  double probe = 0.0;
  if (!parse_double(split_csv_line(rows.front()).front(), probe)) first = 1;  // header line
  for (std::size_t i = first; i < rows.size(); ++i) {
    double v = 0.0;
    if (!parse_double(split_csv_line(rows[i]).front(), v) || !std::isfinite(v) || v < 0.0) {
      throw DataError(path.string() + ": line " + std::to_string(i + 1) +
                      " is not a nonnegative number");
    }
    input.samples.push_back(v);
  }
  if (input.samples.empty()) throw DataError(path.string() + ": no data");
  input.hist = histogram_from_samples(input.samples, bin_width);
  return input;
}

std::string summary_line(const std::string& id, const std::string& metric,
                         const std::string& status, const StoredResult* r) {
  std::ostringstream os;
  os << id << "," << metric << "," << status;
  if (r) {
    os << "," << format_number(r->params.k) << "," << format_number(r->params.lambda) << ","
       << format_number(r->ks) << "," << format_number(r->growth_rate_per_hour) << ","
       << r->n_intervals;
  } else {
    os << ",,,,,";
  }
  return os.str();
}

}  // namespace

std::string outcomes_csv(std::span<const AgentOutcome> outcomes,
                         std::span<const BirthRecord> births) {
  std::ostringstream os;
  os << "agent_id,parent_id,birth_step,likes,dislikes,reposts,references,lifetime,final_energy,"
        "censored\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const BirthRecord b = i < births.size() ? births[i] : BirthRecord{0, kSpontaneous};
    os << i << "," << b.parent << "," << b.step << "," << o.likes << "," << o.dislikes << ","
       << o.reposts << "," << o.references << "," << o.lifetime << "," << o.final_energy << ","
       << (o.censored() ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string histogram_csv(const Histogram& hist) {
  std::ostringstream os;
  os << "bin,count,frequency\n";
  const double total = hist.total();
  for (std::size_t i = 0; i < hist.size(); ++i) {
    os << format_number(hist.lower_edge(i)) << "," << format_number(hist.counts[i]) << ","
       << format_number(total > 0.0 ? hist.counts[i] / total : 0.0) << "\n";
  }
  return os.str();
}

std::string pmf_csv(const LikeCountPmf& pmf) {
  std::ostringstream os;
  os << "n,probability\n";
  for (std::size_t n = 0; n < pmf.probability.size(); ++n) {
    os << n << "," << format_number(pmf.probability[n]) << "\n";
  }
  return os.str();
}

std::string lifetime_csv(const LifetimePmf& pmf) {
  std::ostringstream os;
  os << "t,probability\n";
  for (std::size_t t = 0; t < pmf.absorbed_at.size(); ++t) {
    os << t + 1 << "," << format_number(pmf.absorbed_at[t]) << "\n";
  }
  os << "censored," << format_number(pmf.survival) << "\n";
  return os.str();
}

std::string fit_report_json(const FitReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.params.k;
  j["lambda"] = report.params.lambda;
  j["method"] = to_string(report.method);
  j["objective"] = report.objective;
  j["ks"] = report.ks;
  j["n"] = report.n;
  return j.dump(2) + "\n";
}

std::string plot_data_csv(const Histogram& hist, const WeibullParams& fitted) {
  std::ostringstream os;
  os << "x,empirical,fitted\n";
  const double norm = hist.total() * hist.width;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double x = hist.center(i);
    os << format_number(x) << "," << format_number(hist.counts[i] / norm) << ","
       << format_number(weibull_pdf(fitted, x)) << "\n";
  }
  return os.str();
}

Distribution read_distribution_csv(const fs::path& path) {
  const auto lines = read_lines(path);
  std::vector<std::string> rows;
  for (const auto& l : lines) {
    if (!trim(l).empty()) rows.push_back(l);
  }
  if (rows.empty()) throw DataError(path.string() + ": empty file");
  const auto header = split_csv_line(rows.front());
  if (header.size() < 2) throw DataError(path.string() + ": expected at least 2 columns");
  const std::string h0 = trim(header[0]);
  const std::string h1 = trim(header[1]);
  if (!((h0 == "n" && h1 == "probability") || (h0 == "bin" && h1 == "count"))) {
    throw DataError(path.string() + ": header must be n,probability or bin,count[,frequency]");
  }

  Distribution d;
  bool first = true;
  long long prev = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split_csv_line(rows[i]);
    double label = 0.0;
    double mass = 0.0;
    if (f.size() < 2 || !parse_double(f[1], mass) || !(mass >= 0.0) ||
        !parse_double(f[0], label)) {
      throw DataError(path.string() + ": line " + std::to_string(i + 1) + " is malformed");
    }
    if (!is_integer_label(label)) {
      throw DataError(path.string() + ": bin " + trim(f[0]) + " is not on the unit integer grid");
    }
    const auto bin = static_cast<long long>(label);
    if (first) {
      d.first_bin = bin;
      first = false;
    } else if (bin <= prev) {
      throw DataError(path.string() + ": bins are not strictly increasing at line " +
                      std::to_string(i + 1));
    }
    d.mass.resize(static_cast<std::size_t>(bin - d.first_bin), 0.0);
    d.mass.push_back(mass);
    prev = bin;
  }
  if (first) throw DataError(path.string() + ": no bins");
  return d;
}

Comparison compare_distributions(const Distribution& a, const Distribution& b) {
  auto total = [](const Distribution& d) {
    double s = 0.0;
    for (double m : d.mass) s += m;
    return s;
  };
  const double ta = total(a);
  const double tb = total(b);
  if (!(ta > 0.0) || !(tb > 0.0)) throw DataError("cannot compare a distribution with no mass");

  Comparison c;
  c.first_bin = std::min(a.first_bin, b.first_bin);
  const long long last = std::max(a.first_bin + static_cast<long long>(a.mass.size()),
                                  b.first_bin + static_cast<long long>(b.mass.size()));
  const auto size = static_cast<std::size_t>(last - c.first_bin);
  c.p.assign(size, 0.0);
  c.q.assign(size, 0.0);
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    c.p[static_cast<std::size_t>(a.first_bin - c.first_bin) + i] = a.mass[i] / ta;
  }
  for (std::size_t i = 0; i < b.mass.size(); ++i) {
    c.q[static_cast<std::size_t>(b.first_bin - c.first_bin) + i] = b.mass[i] / tb;
  }
  double cp = 0.0;
  double cq = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    c.total_variation += 0.5 * std::abs(c.p[i] - c.q[i]);
    cp += c.p[i];
    cq += c.q[i];
    c.ks = std::max(c.ks, std::abs(cp - cq));
  }
  c.total_variation = std::min(c.total_variation, 1.0);
  return c;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    prepare_out(config);
    std::vector<AgentOutcome> outcomes;
    std::vector<BirthRecord> births;
    if (config.flow) {
      FlowResult flow =
          simulate_flow(config.model, config.horizon, config.seed, config.max_agents);
      outcomes = std::move(flow.outcomes);
      births = std::move(flow.births);
    } else {
      outcomes = simulate_agents(config.model, config.seed, config.replicates);
    }
    const Histogram hist = collect_histogram(outcomes, config.metric);
    const fs::path dir(config.out);
    write_file_atomic(dir / "outcomes.csv", outcomes_csv(outcomes, births));
    write_file_atomic(dir / "histogram.csv", histogram_csv(hist));

    double mean = 0.0;
    for (const auto& o : outcomes) mean += static_cast<double>(metric_value(o, config.metric));
    mean /= static_cast<double>(outcomes.size());
    out << "simulated " << outcomes.size() << " agents" << (config.flow ? " (flow)" : "")
        << "; mean " << to_string(config.metric) << " = " << format_number(mean) << "; "
        << hist.size() << " histogram bins -> " << config.out << "\n";
    return kExitOk;
  });
}

int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.model.extended_reactions) {
      throw ConfigError(
          "exact: the exact oracle covers the default four-outcome kernel only; set "
          "extended_reactions = false");
    }
    if (config.use_enum && config.model.t_max > kEnumMaxSteps) {
      throw ConfigError("exact: --enum enumerates 4^T_max paths and is limited to T_max <= " +
                        std::to_string(kEnumMaxSteps));
    }
    prepare_out(config);
    const LikeCountPmf pmf = config.use_enum ? like_count_pmf_enum(config.model)
                                             : like_count_pmf_dp(config.model);
    const fs::path dir(config.out);
    write_file_atomic(dir / "pmf.csv", pmf_csv(pmf));
    if (config.lifetime) write_file_atomic(dir / "lifetime.csv", lifetime_csv(lifetime_pmf_dp(config.model)));
    out << "like-count pmf (" << (config.use_enum ? "enumeration" : "dp") << ") over n = 0.."
        << pmf.probability.size() - 1 << ", total mass " << format_number(pmf.total()) << " -> "
        << config.out << "\n";
    return kExitOk;
  });
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.input.empty()) throw ConfigError("fit: --input is required");
    const FitInput input = read_fit_input(config.input, config.bin_width);

    FitReport report;
    if (config.method == FitMethod::kLeastSquares) {
      report = fit_least_squares(input.hist);
    } else if (input.is_histogram) {
      report = fit_mle(expand_to_centers(input.hist));
    } else {
      // Integer-valued data are counts: move them to bin centres.
      const bool counts = std::all_of(input.samples.begin(), input.samples.end(), is_integer_label);
      std::vector<double> xs = input.samples;
      if (counts) {
        for (double& x : xs) x += 0.5;
      }
      report = fit_mle(xs);
    }
    if (!report.ok()) throw DataError("fit skipped: " + *report.failure);

    prepare_out(config);
    const fs::path dir(config.out);
    write_file_atomic(dir / "fit.json", fit_report_json(report));
    write_file_atomic(dir / "plot.csv", plot_data_csv(input.hist, report.params));
    out << "weibull " << to_string(report.method) << " fit: k = " << format_number(report.params.k)
        << ", lambda = " << format_number(report.params.lambda)
        << ", ks = " << format_number(report.ks) << " (n = " << format_number(report.n) << ")\n";
    return kExitOk;
  });
}

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.input.empty()) throw ConfigError("ingest: --input is required");
    const TimelineLoad load = scan_timeline(config.input);
    for (const auto& issue : load.issues) {
      err << "skip: row " << issue.row;
      if (!issue.message_id.empty()) err << " (message " << issue.message_id << ")";
      err << ": " << issue.reason << "\n";
    }
    prepare_out(config);
    const fs::path store = config.store.empty() ? fs::path(config.out) / "results.jsonl"
                                                : fs::path(config.store);
    const std::string fitted_at = utc_timestamp_now();

    std::vector<MessageFit> fits;
    constexpr CountMetric kMetrics[] = {CountMetric::kLikes, CountMetric::kRetweets};
    if (config.mode == IngestMode::kIncrements) {
      for (const auto& t : load.timelines) {
        const IncrementSeries series = compute_increments(t);
        for (auto m : kMetrics) fits.push_back(fit_message(series, m, fitted_at));
      }
    } else {
      for (auto m : kMetrics) fits.push_back(fit_finals(load.timelines, m, fitted_at));
    }

    std::vector<StoredResult> results;
    std::string summary = "message_id,metric,status,k,lambda,ks,growth_rate_per_hour,n_intervals\n";
    for (const auto& f : fits) {
      const StoredResult* r = f.result ? &*f.result : nullptr;
      summary += summary_line(f.message_id, to_string(f.metric),
                              r ? "fitted" : "skipped: " + f.skip_reason, r) + "\n";
      if (r) results.push_back(*r);
    }
    for (const auto& issue : load.issues) {
      if (issue.message_id.empty()) continue;
      summary += summary_line(issue.message_id, "*",
                              "rejected: row " + std::to_string(issue.row) + " " + issue.reason,
                              nullptr) + "\n";
    }
    const std::size_t added = store_results(results, store);
    write_file_atomic(fs::path(config.out) / "summary.csv", summary);

    out << summary;
    out << results.size() << " fits, " << added << " new store lines -> " << store.string()
        << "\n";
    if (load.timelines.empty()) {
      err << "error: no valid messages in " << config.input << "\n";
      return kExitData;
    }
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.pmf.empty() || config.hist.empty()) {
      throw ConfigError("compare: both --pmf and --hist are required");
    }
    Distribution a;
    Distribution b;
    try {
      a = read_distribution_csv(config.pmf);
      b = read_distribution_csv(config.hist);
    } catch (const DataError& e) {
      throw DataError("bins of " + config.pmf + " and " + config.hist +
                      " are not aligned: " + e.what());
    }
    const Comparison c = compare_distributions(a, b);

    prepare_out(config);
    std::ostringstream csv;
    csv << "bin,p,q,residual\n";
    for (std::size_t i = 0; i < c.p.size(); ++i) {
      csv << c.first_bin + static_cast<long long>(i) << "," << format_number(c.p[i]) << ","
          << format_number(c.q[i]) << "," << format_number(c.p[i] - c.q[i]) << "\n";
    }
    const fs::path dir(config.out);
    write_file_atomic(dir / "comparison.csv", csv.str());
    nlohmann::ordered_json j;
    j["total_variation"] = c.total_variation;
    j["ks"] = c.ks;
    j["bins"] = c.p.size();
    write_file_atomic(dir / "comparison.json", j.dump(2) + "\n");

    out << "total_variation = " << format_number(c.total_variation)
        << "\nks = " << format_number(c.ks) << "\n";
    return kExitOk;
  });
}

}  // namespace infoflow
