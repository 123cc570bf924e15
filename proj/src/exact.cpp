#include "infoflow/exact.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace infoflow {

namespace {

void require_default_kernel(const ModelParams& params, const char* who) {
  params.validate();
  if (params.extended_reactions) {
    throw std::invalid_argument(std::string(who) +
                                ": exact oracle is defined for the default kernel only "
                                "(extended_reactions must be false)");
  }
}

// Flat (energy, likes) lattice; energies 0..max_energy, likes 0..t_max.
struct Lattice {
  std::int64_t max_energy;
  std::int64_t width;  // t_max + 1
  std::vector<double> cells;

  Lattice(std::int64_t max_e, std::int64_t t_max)
      : max_energy(max_e), width(t_max + 1),
        cells(static_cast<std::size_t>((max_e + 1) * (t_max + 1)), 0.0) {}

  double& at(std::int64_t e, std::int64_t n) {
    return cells[static_cast<std::size_t>(e * width + n)];
  }
  double at(std::int64_t e, std::int64_t n) const {
    return cells[static_cast<std::size_t>(e * width + n)];
  }
};

std::vector<std::array<double, 4>> step_table(const ModelParams& params, std::int64_t max_e) {
  std::vector<std::array<double, 4>> table(static_cast<std::size_t>(max_e) + 1);
  for (std::int64_t e = 1; e <= max_e; ++e) {
    table[static_cast<std::size_t>(e)] = default_step_probs(params, e);
  }
  return table;
}

LikeCountPmf finish(const ModelParams& params, const Lattice& alive,
                    const std::vector<double>& dead) {
  LikeCountPmf pmf;
  pmf.e0 = params.e0;
  pmf.t_max = params.t_max;
  pmf.probability = dead;
  for (std::int64_t e = 1; e <= alive.max_energy; ++e) {
    for (std::int64_t n = 0; n < alive.width; ++n) {
      pmf.probability[static_cast<std::size_t>(n)] += alive.at(e, n);
    }
  }
  return pmf;
}

constexpr std::size_t kDecay = 3;  // index of delta = -1 in kDefaultDeltas

}  // namespace

double LikeCountPmf::total() const noexcept {
  double s = 0.0;
  for (double p : probability) s += p;
  return s;
}

LikeCountPmf like_count_pmf_dp(const ModelParams& params) {
  require_default_kernel(params, "like_count_pmf_dp");
  const std::int64_t t_max = params.t_max;
  const std::int64_t max_e = params.e0 + 2 * t_max;
  const auto table = step_table(params, max_e);

  Lattice alive(max_e, t_max);
  Lattice next(max_e, t_max);
  std::vector<double> dead(static_cast<std::size_t>(t_max) + 1, 0.0);
  alive.at(params.e0, 0) = 1.0;

  for (std::int64_t t = 0; t < t_max; ++t) {
    // Only energy 1 with delta = -1 reaches the absorbing state.
    for (std::int64_t n = 0; n <= t; ++n) {
      dead[static_cast<std::size_t>(n)] += alive.at(1, n) * table[1][kDecay];
    }
    const std::int64_t reach = std::min(max_e, params.e0 + 2 * (t + 1));
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 1; e <= max_e; ++e) {
      for (std::int64_t n = 0; n <= t_max; ++n) next.at(e, n) = 0.0;
      if (e > reach) continue;
      for (std::size_t k = 0; k < kDefaultDeltas.size(); ++k) {
        const int delta = kDefaultDeltas[k];
        const std::int64_t src = e - delta;
        if (src < 1 || src > max_e) continue;
        const double p = table[static_cast<std::size_t>(src)][k];
        if (p == 0.0) continue;
        if (delta_has_like(delta)) {
          for (std::int64_t n = 1; n <= t + 1; ++n) next.at(e, n) += alive.at(src, n - 1) * p;
        } else {
          for (std::int64_t n = 0; n <= t; ++n) next.at(e, n) += alive.at(src, n) * p;
        }
      }
    }
    std::swap(alive, next);
  }
  return finish(params, alive, dead);
}

namespace serial {

LikeCountPmf like_count_pmf_dp(const ModelParams& params) {
  require_default_kernel(params, "like_count_pmf_dp");
  const std::int64_t t_max = params.t_max;
  const std::int64_t max_e = params.e0 + 2 * t_max;
  const auto table = step_table(params, max_e);

  Lattice alive(max_e, t_max);
  std::vector<double> dead(static_cast<std::size_t>(t_max) + 1, 0.0);
  alive.at(params.e0, 0) = 1.0;

  for (std::int64_t t = 0; t < t_max; ++t) {
    Lattice next(max_e, t_max);
    for (std::int64_t e = 1; e <= max_e; ++e) {
      for (std::int64_t n = 0; n <= t; ++n) {
        const double mass = alive.at(e, n);
        if (mass == 0.0) continue;
        for (std::size_t k = 0; k < kDefaultDeltas.size(); ++k) {
          const int delta = kDefaultDeltas[k];
          const double p = mass * table[static_cast<std::size_t>(e)][k];
          const std::int64_t to = e + delta;
          const std::int64_t likes = n + (delta_has_like(delta) ? 1 : 0);
          if (to == 0) {
            dead[static_cast<std::size_t>(likes)] += p;
          } else {
            next.at(to, likes) += p;
          }
        }
      }
    }
    alive = std::move(next);
  }
  return finish(params, alive, dead);
}

}  // namespace serial

namespace {

struct Enumerator {
  const ModelParams& params;
  std::vector<double>& pmf;

  void walk(Energy energy, std::int64_t steps_left, std::int64_t likes, double prob) {
    if (energy == 0 || steps_left == 0) {
      pmf[static_cast<std::size_t>(likes)] += prob;
      return;
    }
    const auto probs = default_step_probs(params, energy);
    for (std::size_t k = 0; k < kDefaultDeltas.size(); ++k) {
      if (probs[k] == 0.0) continue;  // contributes exactly nothing
      const int delta = kDefaultDeltas[k];
      walk(energy + delta, steps_left - 1, likes + (delta_has_like(delta) ? 1 : 0),
           prob * probs[k]);
    }
  }
};

}  // namespace

LikeCountPmf like_count_pmf_enum(const ModelParams& params) {
  require_default_kernel(params, "like_count_pmf_enum");
  if (params.t_max > kEnumMaxSteps) {
    throw std::invalid_argument("like_count_pmf_enum: T_max " + std::to_string(params.t_max) +
                                " exceeds the enumeration guard of " +
                                std::to_string(kEnumMaxSteps));
  }
  LikeCountPmf pmf;
  pmf.e0 = params.e0;
  pmf.t_max = params.t_max;
  pmf.probability.assign(static_cast<std::size_t>(params.t_max) + 1, 0.0);
  Enumerator{params, pmf.probability}.walk(params.e0, params.t_max, 0, 1.0);
  return pmf;
}

LifetimePmf lifetime_pmf_dp(const ModelParams& params) {
  require_default_kernel(params, "lifetime_pmf_dp");
  const std::int64_t t_max = params.t_max;
  const std::int64_t max_e = params.e0 + 2 * t_max;
  const auto table = step_table(params, max_e);

  std::vector<double> alive(static_cast<std::size_t>(max_e) + 1, 0.0);
  std::vector<double> next(alive.size(), 0.0);
  alive[static_cast<std::size_t>(params.e0)] = 1.0;

  LifetimePmf out;
  out.absorbed_at.reserve(static_cast<std::size_t>(t_max));
  for (std::int64_t t = 0; t < t_max; ++t) {
    out.absorbed_at.push_back(alive[1] * table[1][kDecay]);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t e = 1; e <= max_e; ++e) {
      for (std::size_t k = 0; k < kDefaultDeltas.size(); ++k) {
        const std::int64_t src = e - kDefaultDeltas[k];
        if (src < 1 || src > max_e) continue;
        next[static_cast<std::size_t>(e)] +=
            alive[static_cast<std::size_t>(src)] * table[static_cast<std::size_t>(src)][k];
      }
    }
    std::swap(alive, next);
  }
  for (std::int64_t e = 1; e <= max_e; ++e) out.survival += alive[static_cast<std::size_t>(e)];
  return out;
}

}  // namespace infoflow
