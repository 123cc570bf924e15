#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infoflow/histogram.hpp"
#include "infoflow/weibull.hpp"

namespace infoflow {

enum class FitMethod { kLeastSquares, kMle };

std::string to_string(FitMethod method);
/// Accepts "ls" or "mle"; throws std::invalid_argument otherwise.
FitMethod parse_fit_method(const std::string& name);

/// Outcome of a fit. `failure` is set when the data cannot support a fit; the
/// numeric fields are then meaningless.
struct FitReport {
  WeibullParams params{1.0, 1.0};
  double objective = 0.0;  // residual sum of squares (ls) or negative log-likelihood (mle)
  FitMethod method = FitMethod::kLeastSquares;
  double ks = 1.0;
  double n = 0.0;  // total count (ls) or sample size (mle)
  std::optional<std::string> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

/// Sum over bins of (frequency / width - pdf(bin centre))^2.
double least_squares_objective(const Histogram& hist, const WeibullParams& w);

/// Coarse geometric grid used to seed the least-squares refinement.
struct FitGrid {
  std::vector<double> k;
  std::vector<double> lambda;
};

/// k over [0.2, 10] and lambda over [0.1, 2] x the upper edge of the last
/// nonzero bin, both geometrically spaced.
FitGrid least_squares_grid(const Histogram& hist, std::size_t points_per_axis = 48);

struct GridPoint {
  std::size_t k_index;
  std::size_t lambda_index;
  double objective;
};

/// Argmin of the objective over the grid; ties go to smaller k, then smaller
/// lambda. OpenMP-parallel evaluation, deterministic reduction.
GridPoint grid_search(const Histogram& hist, const FitGrid& grid);

namespace serial {
GridPoint grid_search(const Histogram& hist, const FitGrid& grid);
}  // namespace serial

/// Least-squares Weibull fit of a frequency histogram: grid search, then
/// Nelder-Mead in (log k, log lambda) to a relative tolerance of 1e-6.
FitReport fit_least_squares(const Histogram& hist);

/// Maximum-likelihood fit of positive samples. The shape solves the profile
/// score equation by bisection on [1e-3, 1e3]; lambda = mean(x^k)^(1/k).
FitReport fit_mle(std::span<const double> samples);

/// sup |F_n - F| over the samples' empirical CDF.
double ks_statistic(std::span<const double> samples, const WeibullParams& w);

/// sup |F_n - F| for binned data, evaluated at both edges of every bin.
double ks_statistic(const Histogram& hist, const WeibullParams& w);

/// Minimises `f` from `start` with the Nelder-Mead simplex. Stops when every
/// vertex is within `tol` (per coordinate) of the best one.
std::vector<double> nelder_mead(const std::function<double(std::span<const double>)>& f,
                                std::vector<double> start, std::vector<double> step,
                                double tol, std::size_t max_iter = 5000);

}  // namespace infoflow
