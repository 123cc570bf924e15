#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infoflow/model.hpp"
#include "infoflow/weibull.hpp"

namespace infoflow {

/// One snapshot of a message's cumulative counters.
struct TimelineRecord {
  std::string message_id;
  std::int64_t timestamp = 0;  // seconds since epoch, UTC
  std::int64_t cumulative_likes = 0;
  std::int64_t cumulative_retweets = 0;
  std::optional<std::string> text;
  std::size_t row = 0;  // 1-based line number in the source file (header is row 1)
};

struct Timeline {
  std::string message_id;
  std::vector<TimelineRecord> records;
};

struct LoadIssue {
  std::size_t row;
  std::string message_id;  // empty when the row is unreadable
  std::string reason;
};

struct TimelineLoad {
  std::vector<Timeline> timelines;  // only messages without issues, first-seen order
  std::vector<LoadIssue> issues;
};

/// Parses snapshot CSV text (header message_id,timestamp,likes,retweets[,text]).
/// A message with any malformed or non-monotone row is dropped and reported.
TimelineLoad parse_timelines(std::string_view csv_text);

/// Reads and parses a snapshot file; DataError only if the file is unreadable
/// or the header is wrong.
TimelineLoad scan_timeline(const std::filesystem::path& path);

/// Strict loader: DataError naming the first offending row and message.
std::vector<Timeline> load_timeline(const std::filesystem::path& path);

struct Interval {
  std::size_t index;
  std::int64_t delta_likes;
  std::int64_t delta_retweets;
  std::int64_t seconds;
};

struct IncrementSeries {
  std::string message_id;
  std::vector<Interval> intervals;
  bool insufficient = false;  // fewer than two snapshots
};

IncrementSeries compute_increments(const Timeline& timeline);

enum class CountMetric { kLikes, kRetweets };
std::string to_string(CountMetric metric);

struct StoredResult {
  std::string message_id;
  CountMetric metric = CountMetric::kLikes;
  WeibullParams params{1.0, 1.0};
  double ks = 0.0;
  double growth_rate_per_hour = 0.0;
  std::size_t n_intervals = 0;
  std::string input_digest;
  std::string fitted_at;
};

/// A fit, or the reason the message was skipped.
struct MessageFit {
  std::string message_id;
  CountMetric metric = CountMetric::kLikes;
  std::optional<StoredResult> result;
  std::string skip_reason;
};

/// OLS slope of cumulative count against elapsed hours.
double growth_rate_per_hour(const IncrementSeries& series, CountMetric metric);

/// Least-squares Weibull fit of the per-interval increments of one message.
MessageFit fit_message(const IncrementSeries& series, CountMetric metric,
                       const std::string& fitted_at);

inline constexpr std::string_view kFinalsMessageId = "__finals__";

/// Cross-message fit: the final cumulative count of each message is one sample.
MessageFit fit_finals(std::span<const Timeline> timelines, CountMetric metric,
                      const std::string& fitted_at);

/// JSON object text (one line, no trailing newline) for the store.
std::string stored_result_json(const StoredResult& r);

/// Appends results not already present (keyed by message_id, metric and
/// input_digest). The store is rewritten via temp file + rename. Returns the
/// number of lines added.
std::size_t store_results(std::span<const StoredResult> results,
                          const std::filesystem::path& store_path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp_now();

/// Synthetic snapshots: messages * intervals simulated agents; the likes and
/// reposts of agent (m * intervals + i) become interval i of message m.
std::vector<TimelineRecord> make_timeline_fixture(const ModelParams& params, std::uint64_t seed,
                                                  std::size_t messages, std::size_t intervals,
                                                  std::int64_t start_time = 1700000000,
                                                  std::int64_t interval_seconds = 900);

std::string write_timeline_csv(std::span<const TimelineRecord> records);

}  // namespace infoflow
