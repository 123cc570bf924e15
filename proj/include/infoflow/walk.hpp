#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infoflow/histogram.hpp"
#include "infoflow/model.hpp"

namespace infoflow {

/// Reaction flags recorded on each step.
enum EventFlags : std::uint8_t {
  kLike = 1u << 0,
  kDislike = 1u << 1,
  kRepost = 1u << 2,
  kReference = 1u << 3,
};

struct TrajectoryStep {
  std::int64_t t;  // 1-based step index since birth
  int delta;
  Energy energy_after;
  std::uint8_t events;
};

struct Trajectory {
  Energy initial_energy = 0;
  std::vector<TrajectoryStep> steps;
  bool absorbed = false;
};

struct AgentOutcome {
  std::int64_t likes = 0;
  std::int64_t dislikes = 0;
  std::int64_t reposts = 0;
  std::int64_t references = 0;
  std::int64_t lifetime = 0;
  Energy final_energy = 0;

  /// Still alive at T_max: the lifetime is a lower bound.
  bool censored() const noexcept { return final_energy > 0; }

  friend bool operator==(const AgentOutcome&, const AgentOutcome&) = default;
};

struct AgentRun {
  Trajectory trajectory;
  AgentOutcome outcome;
};

/// One agent's life from E0, reactions drawn from stream (seed, stream_id).
AgentRun simulate_agent(const ModelParams& params, std::uint64_t seed,
                        std::uint64_t stream_id = 0);

/// Same draws as simulate_agent, without recording the trajectory.
AgentOutcome simulate_outcome(const ModelParams& params, std::uint64_t seed,
                              std::uint64_t stream_id);

/// `count` independent agents; agent i uses stream i. OpenMP-parallel, and
/// bit-identical to serial::simulate_agents for any thread count.
std::vector<AgentOutcome> simulate_agents(const ModelParams& params, std::uint64_t seed,
                                          std::size_t count);

namespace serial {
std::vector<AgentOutcome> simulate_agents(const ModelParams& params, std::uint64_t seed,
                                          std::size_t count);
}  // namespace serial

inline constexpr std::int64_t kSpontaneous = -1;

struct BirthRecord {
  std::int64_t step;
  std::int64_t parent;  // kSpontaneous for spontaneous births and the seed agent
};

struct FlowResult {
  std::vector<AgentOutcome> outcomes;
  std::vector<BirthRecord> births;
  /// Absolute steps at which each agent reposted (its copies are born one step later).
  std::vector<std::vector<std::int64_t>> repost_steps;

  std::size_t agent_count() const noexcept { return outcomes.size(); }
};

/// Whole information flow: one agent at step 0, spontaneous births with
/// probability p_s at steps 1..horizon, and a fresh copy (energy E0) born the
/// step after every repost, while the birth step is within the horizon.
/// Stops creating agents at `max_agents`.
FlowResult simulate_flow(const ModelParams& params, std::int64_t horizon, std::uint64_t seed,
                         std::size_t max_agents);

enum class Metric { kLikes, kReposts, kLifetime };

std::string to_string(Metric metric);
/// Throws std::invalid_argument for unknown names.
Metric parse_metric(const std::string& name);

std::int64_t metric_value(const AgentOutcome& outcome, Metric metric) noexcept;

/// Unit-width histogram of `metric`, bins 0..observed max.
Histogram collect_histogram(std::span<const AgentOutcome> outcomes, Metric metric);

}  // namespace infoflow
