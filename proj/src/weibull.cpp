#include "infoflow/weibull.hpp"

#include <cmath>
#include <stdexcept>

#include "infoflow/rng.hpp"

namespace infoflow {

void WeibullParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("Weibull shape k must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("Weibull scale lambda must be > 0");
  }
}

double weibull_pdf(const WeibullParams& w, double x) noexcept {
  if (x < 0.0) return 0.0;
  const double z = x / w.lambda;
  if (z == 0.0) {
    if (w.k == 1.0) return 1.0 / w.lambda;
    return w.k > 1.0 ? 0.0 : INFINITY;
  }
  return (w.k / w.lambda) * std::pow(z, w.k - 1.0) * std::exp(-std::pow(z, w.k));
}

double weibull_cdf(const WeibullParams& w, double x) noexcept {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-std::pow(x / w.lambda, w.k));
}

double weibull_from_uniform(const WeibullParams& w, double u) noexcept {
  return w.lambda * std::pow(-std::log(u), 1.0 / w.k);
}

std::vector<double> sample_weibull(const WeibullParams& w, std::uint64_t seed, std::size_t n) {
  w.validate();
  StreamRng rng(seed, StreamRng::kSampleStream);
  std::vector<double> out(n);
  for (auto& x : out) x = weibull_from_uniform(w, rng.uniform_open());
  return out;
}

}  // namespace infoflow
