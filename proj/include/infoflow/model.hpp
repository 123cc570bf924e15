#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace infoflow {

/// Agent energy. State 0 is absorbing (the message is dead).
using Energy = std::int64_t;

/// Monotone nondecreasing map phi: energy -> [0, 1] that scales the base
/// reaction probabilities.
class ResponseCurve {
 public:
  enum class Kind { kSaturating, kLinearCapped, kConstant };

  /// phi(E) = E / (E + c), c > 0.
  static ResponseCurve saturating(double c);
  /// phi(E) = min(1, E / c), c > 0.
  static ResponseCurve linear_capped(double c);
  /// phi(E) = a, a in [0, 1].
  static ResponseCurve constant(double a);

  double operator()(Energy e) const noexcept;

  Kind kind() const noexcept { return kind_; }
  /// c for saturating / linear-capped, a for constant.
  double parameter() const noexcept { return param_; }

  friend bool operator==(const ResponseCurve&, const ResponseCurve&) = default;

 private:
  ResponseCurve(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

std::string to_string(ResponseCurve::Kind kind);

/// Saturating curve with half-saturation at the initial energy.
ResponseCurve default_response_curve(Energy e0);

struct ModelParams {
  double p_l0 = 0.3;
  double p_d0 = 0.1;
  double p_r0 = 0.2;
  double p_s = 0.0;
  Energy e0 = 3;
  std::int64_t t_max = 20;
  ResponseCurve phi = ResponseCurve::constant(1.0);
  bool extended_reactions = false;
  /// Reference (link) base probability, extended mode only. Falls back to p_l0.
  std::optional<double> p_ref0;

  double reference_base() const noexcept { return p_ref0.value_or(p_l0); }

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

struct ReactionProbs {
  double like = 0.0;
  double dislike = 0.0;
  double repost = 0.0;
  double reference = 0.0;
};

ReactionProbs reaction_probs(const ModelParams& params, Energy e);

struct StepOutcome {
  int delta;
  double probability;
};

/// Conditional law of the energy increment given the current energy.
struct StepDistribution {
  std::vector<StepOutcome> outcomes;

  /// Probability of `delta`, 0 when the delta is outside the support.
  double probability(int delta) const noexcept;
  double total() const noexcept;
  int min_delta() const noexcept;
};

/// Default four-outcome kernel, ordered as deltas {2, 1, 0, -1}.
inline constexpr std::array<int, 4> kDefaultDeltas{2, 1, 0, -1};

/// Probabilities for kDefaultDeltas at energy `e` (no validation, hot path).
std::array<double, 4> default_step_probs(const ModelParams& params, Energy e) noexcept;

/// Whether a default-kernel delta corresponds to a like / a repost.
constexpr bool delta_has_like(int delta) noexcept { return delta == 0 || delta == 2; }
constexpr bool delta_has_repost(int delta) noexcept { return delta == 1 || delta == 2; }

/// Throws std::invalid_argument for e < 1 (state 0 is absorbing).
StepDistribution step_distribution(const ModelParams& params, Energy e);

/// Entry (i, j) of the Markov transition kernel over energy states.
double transition_prob(const ModelParams& params, Energy i, Energy j);

}  // namespace infoflow
