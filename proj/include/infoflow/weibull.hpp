#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace infoflow {

struct WeibullParams {
  double k;       // shape
  double lambda;  // scale, in data units

  /// Throws std::invalid_argument unless k > 0 and lambda > 0.
  void validate() const;
};

/// (k/lambda) (x/lambda)^(k-1) exp(-(x/lambda)^k) for x >= 0, else 0.
double weibull_pdf(const WeibullParams& w, double x) noexcept;

/// 1 - exp(-(x/lambda)^k) for x >= 0, else 0.
double weibull_cdf(const WeibullParams& w, double x) noexcept;

/// lambda (-ln u)^(1/k): the inverse-CDF map applied to the survival level u.
double weibull_from_uniform(const WeibullParams& w, double u) noexcept;

/// `n` inverse-CDF draws; deterministic in `seed`.
std::vector<double> sample_weibull(const WeibullParams& w, std::uint64_t seed, std::size_t n);

}  // namespace infoflow
