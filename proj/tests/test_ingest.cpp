#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "infoflow/io.hpp"
#include "infoflow/fit.hpp"
#include "infoflow/ingest.hpp"
#include "infoflow/walk.hpp"

using namespace infoflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "infoflow_test_ingest";
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove_all(p);
  return p;
}

ModelParams shape_params() {
  ModelParams p;
  p.e0 = 15;
  p.t_max = 200;
  p.p_l0 = 0.5;
  p.p_d0 = 0.1;
  p.p_r0 = 0.1;
  p.phi = ResponseCurve::saturating(15.0);
  return p;
}

Timeline timeline_of(const std::string& id, const std::vector<std::int64_t>& likes,
                     std::int64_t step = 900) {
  Timeline t{id, {}};
  for (std::size_t i = 0; i < likes.size(); ++i) {
    TimelineRecord r;
    r.message_id = id;
    r.timestamp = 1000 + static_cast<std::int64_t>(i) * step;
    r.cumulative_likes = likes[i];
    r.cumulative_retweets = likes[i] / 2;
    r.row = i + 2;
    t.records.push_back(r);
  }
  return t;
}

std::vector<std::string> lines_of(const fs::path& p) { return read_lines(p); }

}  // namespace

TEST_CASE("two snapshots give one increment") {
  const TimelineLoad load = parse_timelines(
      "message_id,timestamp,likes,retweets\n"
      "a,100,5,1\n"
      "a,1000,7,1\n");
  REQUIRE(load.issues.empty());
  REQUIRE(load.timelines.size() == 1);
  const IncrementSeries s = compute_increments(load.timelines[0]);
  REQUIRE(s.intervals.size() == 1);
  CHECK(s.intervals[0].delta_likes == 2);
  CHECK(s.intervals[0].delta_retweets == 0);
  CHECK(s.intervals[0].seconds == 900);
}

TEST_CASE("decreasing count is rejected with its row") {
  const std::string text =
      "message_id,timestamp,likes,retweets,text\n"
      "a,100,5,1,hello\n"
      "a,1000,4,1,hello\n"
      "b,100,1,0,\"quoted, text\"\n"
      "b,1000,2,0,\"quoted, text\"\n";
  const TimelineLoad load = parse_timelines(text);
  REQUIRE(load.issues.size() == 1);
  CHECK(load.issues[0].row == 3);
  CHECK(load.issues[0].message_id == "a");
  REQUIRE(load.timelines.size() == 1);
  CHECK(load.timelines[0].message_id == "b");
  CHECK(load.timelines[0].records[0].text == "quoted, text");

  const fs::path p = scratch("bad.csv");
  write_file_atomic(p, text);
  try {
    load_timeline(p);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("row 3") != std::string::npos);
    CHECK(what.find("message a") != std::string::npos);
  }
}

TEST_CASE("malformed rows are reported") {
  const TimelineLoad load = parse_timelines(
      "message_id,timestamp,likes,retweets\n"
      "a,100,5,1\n"
      "a,xx,6,1\n"
      "b,100,-1,0\n"
      "c,100,1\n"
      "d,100,1,0\n"
      "d,100,2,0\n"
      "e,100,1,0\n");
  CHECK(load.issues.size() == 4);
  REQUIRE(load.timelines.size() == 1);
  CHECK(load.timelines[0].message_id == "e");
  CHECK_THROWS_AS(parse_timelines("id,time,likes\n"), DataError);
  CHECK_THROWS_AS(parse_timelines(""), DataError);
}

TEST_CASE("increments by differencing") {
  const IncrementSeries s = compute_increments(timeline_of("m", {0, 3, 3, 10}));
  REQUIRE(s.intervals.size() == 3);
  CHECK(s.intervals[0].delta_likes == 3);
  CHECK(s.intervals[1].delta_likes == 0);
  CHECK(s.intervals[2].delta_likes == 7);

  const IncrementSeries flat = compute_increments(timeline_of("m", {4, 4, 4, 4, 4}));
  for (const auto& iv : flat.intervals) CHECK(iv.delta_likes == 0);

  const IncrementSeries one = compute_increments(timeline_of("m", {4}));
  CHECK(one.insufficient);
  CHECK(one.intervals.empty());
  CHECK_FALSE(fit_message(one, CountMetric::kLikes, "t").result);
}

TEST_CASE("fixture file groups into three telescoping timelines") {
  const auto timelines = load_timeline(fs::path(INFOFLOW_TEST_DATA) / "fixture_timelines.csv");
  REQUIRE(timelines.size() == 3);
  for (const auto& t : timelines) {
    const IncrementSeries s = compute_increments(t);
    std::int64_t likes = 0;
    std::int64_t retweets = 0;
    for (const auto& iv : s.intervals) {
      CHECK(iv.delta_likes >= 0);
      CHECK(iv.delta_retweets >= 0);
      CHECK(iv.seconds == 900);
      likes += iv.delta_likes;
      retweets += iv.delta_retweets;
    }
    CHECK(likes == t.records.back().cumulative_likes - t.records.front().cumulative_likes);
    CHECK(retweets == t.records.back().cumulative_retweets - t.records.front().cumulative_retweets);
  }
}

TEST_CASE("fixture file is reproducible from the simulator") {
  const auto records = make_timeline_fixture(shape_params(), 2024, 3, 1000);
  CHECK(write_timeline_csv(records) ==
        read_file(fs::path(INFOFLOW_TEST_DATA) / "fixture_timelines.csv"));
}

TEST_CASE("rounded Weibull increments recover the shape") {
  const auto xs = sample_weibull({1.7, 4.6}, 17, 10000);
  std::vector<std::int64_t> cumulative{0};
  // Count n stands for [n, n+1), the same convention as the n + 0.5 bin centres.
  for (double x : xs) cumulative.push_back(cumulative.back() + static_cast<std::int64_t>(std::floor(x)));
  const IncrementSeries s = compute_increments(timeline_of("w", cumulative));
  const MessageFit f = fit_message(s, CountMetric::kLikes, "2026-01-01T00:00:00Z");
  REQUIRE(f.result);
  CHECK(std::abs(f.result->params.k - 1.7) <= 0.17);
  CHECK(f.result->n_intervals == 10000);
  CHECK(f.result->ks <= 1.0);
}

TEST_CASE("all-zero increments are skipped") {
  const MessageFit f =
      fit_message(compute_increments(timeline_of("z", {3, 3, 3, 3, 3, 3})), CountMetric::kLikes, "t");
  CHECK_FALSE(f.result);
  CHECK_FALSE(f.skip_reason.empty());
}

TEST_CASE("linear growth rate per hour") {
  for (std::int64_t c : {1, 3, 10}) {
    std::vector<std::int64_t> cum;
    for (std::int64_t i = 0; i < 20; ++i) cum.push_back(7 + c * i);
    const IncrementSeries s = compute_increments(timeline_of("g", cum));
    CHECK(growth_rate_per_hour(s, CountMetric::kLikes) ==
          doctest::Approx(4.0 * static_cast<double>(c)).epsilon(1e-12));
  }
  // Irregular spacing: 2 likes per 30 minutes is 4 per hour.
  const IncrementSeries s = compute_increments(timeline_of("g", {0, 2, 4, 6}, 1800));
  CHECK(growth_rate_per_hour(s, CountMetric::kLikes) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("store is append-only and deduplicated") {
  const auto timelines = load_timeline(fs::path(INFOFLOW_TEST_DATA) / "fixture_timelines.csv");
  std::vector<StoredResult> likes;
  for (const auto& t : timelines) {
    const MessageFit f = fit_message(compute_increments(t), CountMetric::kLikes, "2026-01-01T00:00:00Z");
    REQUIRE(f.result);
    likes.push_back(*f.result);
  }
  const fs::path store = scratch("results.jsonl");
  CHECK(store_results(likes, store) == 3);
  CHECK(lines_of(store).size() == 3);
  CHECK(store_results(likes, store) == 0);
  CHECK(lines_of(store).size() == 3);

  std::vector<StoredResult> mixed = likes;
  const MessageFit r =
      fit_message(compute_increments(timelines[0]), CountMetric::kRetweets, "2026-01-02T00:00:00Z");
  REQUIRE(r.result);
  mixed.push_back(*r.result);
  CHECK(store_results(mixed, store) == 1);
  const auto lines = lines_of(store);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == stored_result_json(likes[0]));
  CHECK(lines[3] == stored_result_json(*r.result));
  CHECK(lines[3].find("\"metric\":\"retweets\"") != std::string::npos);
}

TEST_CASE("store errors") {
  StoredResult r;
  r.message_id = "x";
  r.input_digest = "d";
  const std::vector<StoredResult> one{r};
  CHECK_THROWS(store_results(one, "/nonexistent-dir-for-infoflow/sub/results.jsonl"));

  const fs::path store = scratch("corrupt.jsonl");
  write_file_atomic(store, "{not json\n");
  CHECK_THROWS_AS(store_results(one, store), DataError);
}

TEST_CASE("pipeline determinism") {
  const auto timelines = load_timeline(fs::path(INFOFLOW_TEST_DATA) / "fixture_timelines.csv");
  for (const auto& t : timelines) {
    const auto s = compute_increments(t);
    const MessageFit a = fit_message(s, CountMetric::kLikes, "2026-01-01T00:00:00Z");
    const MessageFit b = fit_message(s, CountMetric::kLikes, "2026-01-01T00:00:00Z");
    const MessageFit c = fit_message(s, CountMetric::kLikes, "2030-06-01T12:00:00Z");
    REQUIRE(a.result);
    CHECK(stored_result_json(*a.result) == stored_result_json(*b.result));
    CHECK(a.result->input_digest == c.result->input_digest);
    CHECK(a.result->input_digest.size() == 64);
  }
}

TEST_CASE("ingest reproduces the simulator-side fit") {
  const ModelParams p = shape_params();
  constexpr std::size_t kIntervals = 20000;
  const auto records = make_timeline_fixture(p, 9, 1, kIntervals);
  const auto load = parse_timelines(write_timeline_csv(records));
  REQUIRE(load.timelines.size() == 1);
  const MessageFit f =
      fit_message(compute_increments(load.timelines[0]), CountMetric::kLikes, "t");
  REQUIRE(f.result);

  const FitReport direct =
      fit_least_squares(collect_histogram(simulate_agents(p, 9, kIntervals), Metric::kLikes));
  REQUIRE(direct.ok());
  CHECK(std::abs(f.result->params.k - direct.params.k) <= 0.10 * direct.params.k);
  CHECK(std::abs(f.result->params.lambda - direct.params.lambda) <= 0.10 * direct.params.lambda);
}

TEST_CASE("finals mode fits one sample per message") {
  std::vector<Timeline> ts;
  const auto xs = sample_weibull({2.1, 7.4}, 5, 300);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ts.push_back(timeline_of("m" + std::to_string(i), {0, std::llround(xs[i])}));
  }
  const MessageFit f = fit_finals(ts, CountMetric::kLikes, "t");
  REQUIRE(f.result);
  CHECK(f.result->message_id == kFinalsMessageId);
  CHECK(f.result->n_intervals == 300);
  CHECK(f.result->params.k > 1.0);
}
