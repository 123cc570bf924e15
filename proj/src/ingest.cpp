#include "infoflow/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "infoflow/fit.hpp"
#include "infoflow/histogram.hpp"
#include "infoflow/io.hpp"
#include "infoflow/walk.hpp"

namespace infoflow {

namespace {

bool parse_int(const std::string& text, std::int64_t& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc{} && res.ptr == t.data() + t.size();
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::int64_t metric_delta(const Interval& iv, CountMetric metric) {
  return metric == CountMetric::kLikes ? iv.delta_likes : iv.delta_retweets;
}

std::int64_t metric_count(const TimelineRecord& r, CountMetric metric) {
  return metric == CountMetric::kLikes ? r.cumulative_likes : r.cumulative_retweets;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

MessageFit fit_values(std::string message_id, CountMetric metric,
                      const std::vector<long long>& values, const std::string& digest,
                      double growth, const std::string& fitted_at, std::size_t n_intervals) {
  MessageFit fit;
  fit.message_id = std::move(message_id);
  fit.metric = metric;
  const auto nonzero = std::count_if(values.begin(), values.end(), [](long long v) { return v > 0; });
  if (nonzero < 3) {
    fit.skip_reason = "fewer than 3 nonzero " + to_string(metric) + " intervals";
    return fit;
  }
  const FitReport report = fit_least_squares(histogram_from_integers(values));
  if (!report.ok()) {
    fit.skip_reason = *report.failure;
    return fit;
  }
  StoredResult r;
  r.message_id = fit.message_id;
  r.metric = metric;
  r.params = report.params;
  r.ks = report.ks;
  r.growth_rate_per_hour = growth;
  r.n_intervals = n_intervals;
  r.input_digest = digest;
  r.fitted_at = fitted_at;
  fit.result = std::move(r);
  return fit;
}

}  // namespace

TimelineLoad parse_timelines(std::string_view csv_text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(csv_text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  if (lines.empty()) throw DataError("timeline file is empty (missing header)");
  const auto header = split_csv_line(lines.front());
  const bool has_text = header.size() == 5;
  if (header.size() < 4 || header.size() > 5 || trim(header[0]) != "message_id" ||
      trim(header[1]) != "timestamp" || trim(header[2]) != "likes" ||
      trim(header[3]) != "retweets" || (has_text && trim(header[4]) != "text")) {
    throw DataError("timeline header must be message_id,timestamp,likes,retweets[,text]");
  }

  TimelineLoad load;
  std::map<std::string, std::size_t> index;  // message -> timelines slot
  std::set<std::string> rejected;
  std::vector<Timeline> all;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(lines[i]);
    } catch (const DataError& e) {
      load.issues.push_back({row, "", e.what()});
      continue;
    }
    const std::string id = fields.empty() ? std::string{} : trim(fields[0]);
    auto reject = [&](const std::string& reason) {
      load.issues.push_back({row, id, reason});
      if (!id.empty()) rejected.insert(id);
    };
    if (id.empty()) {
      load.issues.push_back({row, "", "missing message_id"});
      continue;
    }
    if (fields.size() < 4 || fields.size() > (has_text ? 5u : 4u)) {
      reject("expected " + std::string(has_text ? "4 or 5" : "4") + " fields, got " +
             std::to_string(fields.size()));
      continue;
    }
    TimelineRecord rec;
    rec.message_id = id;
    rec.row = row;
    if (!parse_int(fields[1], rec.timestamp)) {
      reject("timestamp is not an integer");
      continue;
    }
    if (!parse_int(fields[2], rec.cumulative_likes) || rec.cumulative_likes < 0) {
      reject("likes is not a nonnegative integer");
      continue;
    }
    if (!parse_int(fields[3], rec.cumulative_retweets) || rec.cumulative_retweets < 0) {
      reject("retweets is not a nonnegative integer");
      continue;
    }
    if (fields.size() == 5) rec.text = fields[4];

    auto [it, inserted] = index.try_emplace(id, all.size());
    if (inserted) all.push_back({id, {}});
    auto& records = all[it->second].records;
    if (!records.empty()) {
      const auto& prev = records.back();
      if (rec.timestamp <= prev.timestamp) {
        reject("timestamp does not increase (previous row " + std::to_string(prev.row) + ")");
        continue;
      }
      if (rec.cumulative_likes < prev.cumulative_likes ||
          rec.cumulative_retweets < prev.cumulative_retweets) {
        reject("cumulative count decreases (previous row " + std::to_string(prev.row) + ")");
        continue;
      }
    }
    records.push_back(std::move(rec));
  }

  for (auto& t : all) {
    if (!rejected.contains(t.message_id)) load.timelines.push_back(std::move(t));
  }
  return load;
}

TimelineLoad scan_timeline(const std::filesystem::path& path) {
  return parse_timelines(read_file(path));
}

std::vector<Timeline> load_timeline(const std::filesystem::path& path) {
  TimelineLoad load = scan_timeline(path);
  if (!load.issues.empty()) {
    const auto& first = load.issues.front();
    std::string msg = path.string() + ": row " + std::to_string(first.row);
    if (!first.message_id.empty()) msg += " (message " + first.message_id + ")";
    throw DataError(msg + ": " + first.reason);
  }
  return std::move(load.timelines);
}

IncrementSeries compute_increments(const Timeline& timeline) {
  IncrementSeries s;
  s.message_id = timeline.message_id;
  const auto& r = timeline.records;
  if (r.size() < 2) {
    s.insufficient = true;
    return s;
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    s.intervals.push_back({i - 1, r[i].cumulative_likes - r[i - 1].cumulative_likes,
                           r[i].cumulative_retweets - r[i - 1].cumulative_retweets,
                           r[i].timestamp - r[i - 1].timestamp});
  }
  return s;
}

std::string to_string(CountMetric metric) {
  return metric == CountMetric::kLikes ? "likes" : "retweets";
}

double growth_rate_per_hour(const IncrementSeries& series, CountMetric metric) {
  std::vector<double> hours{0.0};
  std::vector<double> counts{0.0};
  for (const auto& iv : series.intervals) {
    hours.push_back(hours.back() + static_cast<double>(iv.seconds) / 3600.0);
    counts.push_back(counts.back() + static_cast<double>(metric_delta(iv, metric)));
  }
  return ols_slope(hours, counts);
}

MessageFit fit_message(const IncrementSeries& series, CountMetric metric,
                       const std::string& fitted_at) {
  std::vector<long long> values;
  std::string canon = series.message_id + "\n" + to_string(metric) + "\nincrements\n";
  for (const auto& iv : series.intervals) {
    values.push_back(metric_delta(iv, metric));
    canon += std::to_string(metric_delta(iv, metric)) + "," + std::to_string(iv.seconds) + "\n";
  }
  if (series.insufficient) {
    MessageFit fit;
    fit.message_id = series.message_id;
    fit.metric = metric;
    fit.skip_reason = "fewer than 2 snapshots";
    return fit;
  }
  return fit_values(series.message_id, metric, values, sha256_hex(canon),
                    growth_rate_per_hour(series, metric), fitted_at, series.intervals.size());
}

MessageFit fit_finals(std::span<const Timeline> timelines, CountMetric metric,
                      const std::string& fitted_at) {
  std::vector<std::pair<std::string, long long>> finals;
  double growth = 0.0;
  std::size_t growth_n = 0;
  for (const auto& t : timelines) {
    if (t.records.empty()) continue;
    finals.emplace_back(t.message_id, metric_count(t.records.back(), metric));
    const IncrementSeries s = compute_increments(t);
    if (!s.insufficient) {
      growth += growth_rate_per_hour(s, metric);
      ++growth_n;
    }
  }
  std::sort(finals.begin(), finals.end());
  std::string canon = std::string(kFinalsMessageId) + "\n" + to_string(metric) + "\nfinals\n";
  std::vector<long long> values;
  for (const auto& [id, v] : finals) {
    values.push_back(v);
    canon += id + "," + std::to_string(v) + "\n";
  }
  return fit_values(std::string(kFinalsMessageId), metric, values, sha256_hex(canon),
                    growth_n ? growth / static_cast<double>(growth_n) : 0.0, fitted_at,
                    finals.size());
}

std::string stored_result_json(const StoredResult& r) {
  nlohmann::ordered_json j;
  j["message_id"] = r.message_id;
  j["metric"] = to_string(r.metric);
  j["k"] = r.params.k;
  j["lambda"] = r.params.lambda;
  j["ks"] = r.ks;
  j["growth_rate_per_hour"] = r.growth_rate_per_hour;
  j["n_intervals"] = r.n_intervals;
  j["input_digest"] = r.input_digest;
  j["fitted_at"] = r.fitted_at;
  return j.dump();
}

std::size_t store_results(std::span<const StoredResult> results,
                          const std::filesystem::path& store_path) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::set<Key> seen;
  std::string content;
  if (std::filesystem::exists(store_path)) {
    content = read_file(store_path);
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        seen.emplace(j.at("message_id").get<std::string>(), j.at("metric").get<std::string>(),
                     j.at("input_digest").get<std::string>());
      } catch (const nlohmann::json::exception& e) {
        throw DataError(store_path.string() + ": corrupt store line " + std::to_string(lineno) +
                        ": " + e.what());
      }
    }
    if (!content.empty() && content.back() != '\n') content.push_back('\n');
  }

  std::size_t added = 0;
  for (const auto& r : results) {
    if (!seen.emplace(r.message_id, to_string(r.metric), r.input_digest).second) continue;
    content += stored_result_json(r);
    content.push_back('\n');
    ++added;
  }
  if (added > 0) write_file_atomic(store_path, content);
  return added;
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<TimelineRecord> make_timeline_fixture(const ModelParams& params, std::uint64_t seed,
                                                  std::size_t messages, std::size_t intervals,
                                                  std::int64_t start_time,
                                                  std::int64_t interval_seconds) {
  const auto agents = simulate_agents(params, seed, messages * intervals);
  std::vector<TimelineRecord> out;
  out.reserve(messages * (intervals + 1));
  for (std::size_t m = 0; m < messages; ++m) {
    TimelineRecord rec;
    rec.message_id = "msg-" + std::to_string(m + 1);
    rec.timestamp = start_time;
    rec.text = "synthetic message " + std::to_string(m + 1);
    out.push_back(rec);
    for (std::size_t i = 0; i < intervals; ++i) {
      const auto& a = agents[m * intervals + i];
      rec.timestamp += interval_seconds;
      rec.cumulative_likes += a.likes;
      rec.cumulative_retweets += a.reposts;
      out.push_back(rec);
    }
  }
  return out;
}

std::string write_timeline_csv(std::span<const TimelineRecord> records) {
  const bool has_text = std::any_of(records.begin(), records.end(),
                                    [](const TimelineRecord& r) { return r.text.has_value(); });
  std::string out = has_text ? "message_id,timestamp,likes,retweets,text\n"
                             : "message_id,timestamp,likes,retweets\n";
  for (const auto& r : records) {
    out += csv_escape(r.message_id) + "," + std::to_string(r.timestamp) + "," +
           std::to_string(r.cumulative_likes) + "," + std::to_string(r.cumulative_retweets);
    if (has_text) out += "," + csv_escape(r.text.value_or(""));
    out += "\n";
  }
  return out;
}

}  // namespace infoflow
