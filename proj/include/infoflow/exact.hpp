#pragma once

#include <cstdint>
#include <vector>

#include "infoflow/model.hpp"

namespace infoflow {

/// Exact distribution of the number of likes one agent collects before it
/// dies or the horizon T_max runs out. No likes accrue after absorption.
struct LikeCountPmf {
  Energy e0 = 0;
  std::int64_t t_max = 0;
  /// probability[n] = P{exactly n likes}, n = 0..T_max.
  std::vector<double> probability;

  double total() const noexcept;
};

/// First-passage law of energy 0.
struct LifetimePmf {
  /// absorbed_at[t - 1] = P{energy first hits 0 at step t}, t = 1..T_max.
  std::vector<double> absorbed_at;
  double survival = 0.0;  // P{still alive after T_max}
};

/// Dynamic programme over (energy, likes) layered by step. Pull-form sweep
/// over energies, OpenMP-parallel. Default (four-outcome) kernel only.
LikeCountPmf like_count_pmf_dp(const ModelParams& params);

/// Exhaustive enumeration of every path of length <= T_max, truncated at
/// absorption. Ground truth for the DP; T_max is capped at kEnumMaxSteps.
LikeCountPmf like_count_pmf_enum(const ModelParams& params);

inline constexpr std::int64_t kEnumMaxSteps = 14;

LifetimePmf lifetime_pmf_dp(const ModelParams& params);

namespace serial {
/// Push-form (forward propagation) reference for like_count_pmf_dp.
LikeCountPmf like_count_pmf_dp(const ModelParams& params);
}  // namespace serial

}  // namespace infoflow
