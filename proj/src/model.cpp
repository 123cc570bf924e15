#include "infoflow/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace infoflow {

namespace {

void require_probability(double p, const char* key) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(key) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

ResponseCurve ResponseCurve::saturating(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("phi.c must be > 0 for the saturating curve");
  }
  return {Kind::kSaturating, c};
}

ResponseCurve ResponseCurve::linear_capped(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("phi.c must be > 0 for the linear-capped curve");
  }
  return {Kind::kLinearCapped, c};
}

ResponseCurve ResponseCurve::constant(double a) {
  require_probability(a, "phi.a");
  return {Kind::kConstant, a};
}

double ResponseCurve::operator()(Energy e) const noexcept {
  const double x = e > 0 ? static_cast<double>(e) : 0.0;
  switch (kind_) {
    case Kind::kSaturating:
      return x / (x + param_);
    case Kind::kLinearCapped:
      return std::min(1.0, x / param_);
    case Kind::kConstant:
      return param_;
  }
  return 0.0;
}

std::string to_string(ResponseCurve::Kind kind) {
  switch (kind) {
    case ResponseCurve::Kind::kSaturating:
      return "saturating";
    case ResponseCurve::Kind::kLinearCapped:
      return "linear-capped";
    case ResponseCurve::Kind::kConstant:
      return "constant";
  }
  return "unknown";
}

ResponseCurve default_response_curve(Energy e0) {
  return ResponseCurve::saturating(static_cast<double>(std::max<Energy>(e0, 1)));
}

void ModelParams::validate() const {
  require_probability(p_l0, "p_l0");
  require_probability(p_d0, "p_d0");
  require_probability(p_r0, "p_r0");
  require_probability(p_s, "p_s");
  if (p_ref0) require_probability(*p_ref0, "p_ref0");
  if (e0 < 1) throw std::invalid_argument("E0 must be >= 1");
  if (t_max < 1) throw std::invalid_argument("T_max must be >= 1");
}

ReactionProbs reaction_probs(const ModelParams& params, Energy e) {
  const double f = params.phi(e);
  return {params.p_l0 * f, params.p_d0 * f, params.p_r0 * f, params.reference_base() * f};
}

std::array<double, 4> default_step_probs(const ModelParams& params, Energy e) noexcept {
  const double f = params.phi(e);
  const double like = params.p_l0 * f;
  const double repost = params.p_r0 * f;
  return {like * repost, (1.0 - like) * repost, like * (1.0 - repost),
          (1.0 - like) * (1.0 - repost)};
}

double StepDistribution::probability(int delta) const noexcept {
  for (const auto& o : outcomes) {
    if (o.delta == delta) return o.probability;
  }
  return 0.0;
}

double StepDistribution::total() const noexcept {
  double s = 0.0;
  for (const auto& o : outcomes) s += o.probability;
  return s;
}

int StepDistribution::min_delta() const noexcept {
  int m = 0;
  for (const auto& o : outcomes) m = std::min(m, o.delta);
  return m;
}

namespace {

// Law of like - dislike + 2*repost + reference - 1 with independent events.
StepDistribution extended_step_distribution(const ModelParams& params, Energy e) {
  const ReactionProbs r = reaction_probs(params, e);
  std::map<int, double> law{{-1, 1.0}};
  auto convolve = [&law](int shift, double p) {
    std::map<int, double> next;
    for (const auto& [d, q] : law) {
      next[d] += q * (1.0 - p);
      next[d + shift] += q * p;
    }
    law = std::move(next);
  };
  convolve(+1, r.like);
  convolve(-1, r.dislike);
  convolve(+2, r.repost);
  convolve(+1, r.reference);

  StepDistribution dist;
  for (auto it = law.rbegin(); it != law.rend(); ++it) {
    dist.outcomes.push_back({it->first, it->second});
  }
  return dist;
}

}  // namespace

StepDistribution step_distribution(const ModelParams& params, Energy e) {
  if (e < 1) {
    throw std::invalid_argument("step_distribution: energy 0 is absorbing");
  }
  if (params.extended_reactions) return extended_step_distribution(params, e);

  const auto probs = default_step_probs(params, e);
  StepDistribution dist;
  dist.outcomes.reserve(kDefaultDeltas.size());
  for (std::size_t k = 0; k < kDefaultDeltas.size(); ++k) {
    dist.outcomes.push_back({kDefaultDeltas[k], probs[k]});
  }
  return dist;
}

double transition_prob(const ModelParams& params, Energy i, Energy j) {
  if (i < 0 || j < 0) return 0.0;
  if (i == 0) return j == 0 ? 1.0 : 0.0;

  const StepDistribution dist = step_distribution(params, i);
  if (j == 0) {
    // Overshoot below zero (extended kernel only) is absorbed at 0.
    double mass = 0.0;
    for (const auto& o : dist.outcomes) {
      if (i + o.delta <= 0) mass += o.probability;
    }
    return mass;
  }
  const Energy diff = j - i;
  if (diff < -8 || diff > 8) return 0.0;
  return dist.probability(static_cast<int>(diff));
}

}  // namespace infoflow
