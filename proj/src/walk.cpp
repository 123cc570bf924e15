#include "infoflow/walk.hpp"

#include <algorithm>
#include <stdexcept>

#include "infoflow/rng.hpp"

namespace infoflow {

namespace {

struct NoRecord {
  void operator()(const TrajectoryStep&) const noexcept {}
};

struct StepDraw {
  int delta;
  std::uint8_t events;
};

StepDraw draw_default(const ModelParams& params, Energy e, StreamRng& rng) {
  const auto probs = default_step_probs(params, e);
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t pick = kDefaultDeltas.size() - 1;
  for (std::size_t k = 0; k + 1 < kDefaultDeltas.size(); ++k) {
    acc += probs[k];
    if (u < acc) {
      pick = k;
      break;
    }
  }
  const int delta = kDefaultDeltas[pick];
  std::uint8_t events = 0;
  if (delta_has_like(delta)) events |= kLike;
  if (delta_has_repost(delta)) events |= kRepost;
  return {delta, events};
}

StepDraw draw_extended(const ModelParams& params, Energy e, StreamRng& rng) {
  const ReactionProbs r = reaction_probs(params, e);
  std::uint8_t events = 0;
  int delta = -1;
  if (rng.bernoulli(r.like)) { events |= kLike; delta += 1; }
  if (rng.bernoulli(r.dislike)) { events |= kDislike; delta -= 1; }
  if (rng.bernoulli(r.repost)) { events |= kRepost; delta += 2; }
  if (rng.bernoulli(r.reference)) { events |= kReference; delta += 1; }
  return {delta, events};
}

template <class Recorder>
AgentOutcome run_agent(const ModelParams& params, StreamRng& rng, Recorder&& record) {
  AgentOutcome out;
  Energy energy = params.e0;
  std::int64_t t = 0;
  while (energy > 0 && t < params.t_max) {
    ++t;
    const StepDraw d = params.extended_reactions ? draw_extended(params, energy, rng)
                                                 : draw_default(params, energy, rng);
    energy = std::max<Energy>(0, energy + d.delta);
    if (d.events & kLike) ++out.likes;
    if (d.events & kDislike) ++out.dislikes;
    if (d.events & kRepost) ++out.reposts;
    if (d.events & kReference) ++out.references;
    record(TrajectoryStep{t, d.delta, energy, d.events});
  }
  out.lifetime = t;
  out.final_energy = energy;
  return out;
}

}  // namespace

AgentRun simulate_agent(const ModelParams& params, std::uint64_t seed, std::uint64_t stream_id) {
  params.validate();
  StreamRng rng(seed, stream_id);
  AgentRun run;
  run.trajectory.initial_energy = params.e0;
  run.outcome = run_agent(params, rng, [&](const TrajectoryStep& s) {
    run.trajectory.steps.push_back(s);
  });
  run.trajectory.absorbed = run.outcome.final_energy == 0;
  return run;
}

AgentOutcome simulate_outcome(const ModelParams& params, std::uint64_t seed,
                              std::uint64_t stream_id) {
  StreamRng rng(seed, stream_id);
  return run_agent(params, rng, NoRecord{});
}

std::vector<AgentOutcome> simulate_agents(const ModelParams& params, std::uint64_t seed,
                                          std::size_t count) {
  params.validate();
  std::vector<AgentOutcome> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        simulate_outcome(params, seed, static_cast<std::uint64_t>(i));
  }
  return out;
}

namespace serial {

std::vector<AgentOutcome> simulate_agents(const ModelParams& params, std::uint64_t seed,
                                          std::size_t count) {
  params.validate();
  std::vector<AgentOutcome> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(simulate_outcome(params, seed, i));
  }
  return out;
}

}  // namespace serial

FlowResult simulate_flow(const ModelParams& params, std::int64_t horizon, std::uint64_t seed,
                         std::size_t max_agents) {
  params.validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (max_agents == 0) throw std::invalid_argument("max_agents must be >= 1");

  StreamRng births(seed, StreamRng::kBirthStream);
  // pending[b]: parents (in id order) whose copies are born at step b.
  std::vector<std::vector<std::int64_t>> pending(static_cast<std::size_t>(horizon) + 1);
  FlowResult result;

  std::vector<std::int64_t> cohort_parents;
  std::vector<AgentRun> cohort;
  for (std::int64_t b = 0; b <= horizon; ++b) {
    cohort_parents.clear();
    // The birth draw happens every step so the stream never depends on the cap.
    const bool spontaneous = b == 0 || births.bernoulli(params.p_s);
    if (spontaneous) cohort_parents.push_back(kSpontaneous);
    const auto& copies = pending[static_cast<std::size_t>(b)];
    cohort_parents.insert(cohort_parents.end(), copies.begin(), copies.end());

    const std::size_t room = max_agents - result.agent_count();
    if (cohort_parents.size() > room) cohort_parents.resize(room);

    const std::size_t first_id = result.agent_count();
    const auto n = static_cast<std::int64_t>(cohort_parents.size());
    cohort.assign(cohort_parents.size(), AgentRun{});
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
      cohort[static_cast<std::size_t>(k)] =
          simulate_agent(params, seed, first_id + static_cast<std::size_t>(k));
    }

    for (std::size_t k = 0; k < cohort.size(); ++k) {
      const auto id = static_cast<std::int64_t>(first_id + k);
      std::vector<std::int64_t> reposts;
      for (const auto& s : cohort[k].trajectory.steps) {
        if (!(s.events & kRepost)) continue;
        const std::int64_t at = b + s.t;
        reposts.push_back(at);
        if (at + 1 <= horizon) pending[static_cast<std::size_t>(at + 1)].push_back(id);
      }
      result.outcomes.push_back(cohort[k].outcome);
      result.births.push_back({b, cohort_parents[k]});
      result.repost_steps.push_back(std::move(reposts));
    }
    if (result.agent_count() >= max_agents) break;
  }
  return result;
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::kLikes:
      return "likes";
    case Metric::kReposts:
      return "reposts";
    case Metric::kLifetime:
      return "lifetime";
  }
  return "unknown";
}

Metric parse_metric(const std::string& name) {
  if (name == "likes") return Metric::kLikes;
  if (name == "reposts") return Metric::kReposts;
  if (name == "lifetime") return Metric::kLifetime;
  throw std::invalid_argument("unknown metric '" + name + "' (expected likes, reposts or lifetime)");
}

std::int64_t metric_value(const AgentOutcome& outcome, Metric metric) noexcept {
  switch (metric) {
    case Metric::kLikes:
      return outcome.likes;
    case Metric::kReposts:
      return outcome.reposts;
    case Metric::kLifetime:
      return outcome.lifetime;
  }
  return 0;
}

Histogram collect_histogram(std::span<const AgentOutcome> outcomes, Metric metric) {
  if (outcomes.empty()) throw std::invalid_argument("collect_histogram: no outcomes");
  std::vector<long long> values;
  values.reserve(outcomes.size());
  for (const auto& o : outcomes) values.push_back(metric_value(o, metric));
  return histogram_from_integers(values);
}

}  // namespace infoflow
