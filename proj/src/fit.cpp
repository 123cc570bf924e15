#include "infoflow/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace infoflow {

std::string to_string(FitMethod method) {
  return method == FitMethod::kMle ? "mle" : "ls";
}

FitMethod parse_fit_method(const std::string& name) {
  if (name == "ls") return FitMethod::kLeastSquares;
  if (name == "mle") return FitMethod::kMle;
  throw std::invalid_argument("unknown fit method '" + name + "' (expected ls or mle)");
}

double least_squares_objective(const Histogram& hist, const WeibullParams& w) {
  const double norm = hist.total() * hist.width;
  double rss = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double r = hist.counts[i] / norm - weibull_pdf(w, hist.center(i));
    rss += r * r;
  }
  return rss;
}

namespace {

std::vector<double> geometric_axis(double lo, double hi, std::size_t points) {
  std::vector<double> axis(points);
  if (points == 1) {
    axis[0] = lo;
    return axis;
  }
  const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) axis[i] = lo * std::exp(ratio * static_cast<double>(i));
  axis.back() = hi;
  return axis;
}

double data_max(const Histogram& hist) {
  for (std::size_t i = hist.size(); i-- > 0;) {
    if (hist.counts[i] > 0.0) return hist.upper_edge(i);
  }
  return hist.upper_edge(0);
}

// Strict "better" under the tie rule: lower objective, then smaller k, then
// smaller lambda. Grid axes are increasing, so indices order the same way.
bool better(const GridPoint& a, const GridPoint& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  if (a.k_index != b.k_index) return a.k_index < b.k_index;
  return a.lambda_index < b.lambda_index;
}

GridPoint reduce(const std::vector<double>& values, std::size_t nl) {
  GridPoint best{0, 0, std::numeric_limits<double>::infinity()};
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const GridPoint p{idx / nl, idx % nl, values[idx]};
    if (std::isnan(p.objective)) continue;
    if (better(p, best)) best = p;
  }
  return best;
}

}  // namespace

FitGrid least_squares_grid(const Histogram& hist, std::size_t points_per_axis) {
  const double hi = data_max(hist);
  return {geometric_axis(0.2, 10.0, points_per_axis),
          geometric_axis(0.1 * hi, 2.0 * hi, points_per_axis)};
}

GridPoint grid_search(const Histogram& hist, const FitGrid& grid) {
  const std::size_t nk = grid.k.size();
  const std::size_t nl = grid.lambda.size();
  std::vector<double> values(nk * nl);
  const auto total = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    values[i] = least_squares_objective(hist, {grid.k[i / nl], grid.lambda[i % nl]});
  }
  return reduce(values, nl);
}

namespace serial {

GridPoint grid_search(const Histogram& hist, const FitGrid& grid) {
  GridPoint best{0, 0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < grid.k.size(); ++i) {
    for (std::size_t j = 0; j < grid.lambda.size(); ++j) {
      const GridPoint p{i, j, least_squares_objective(hist, {grid.k[i], grid.lambda[j]})};
      if (!std::isnan(p.objective) && better(p, best)) best = p;
    }
  }
  return best;
}

}  // namespace serial

std::vector<double> nelder_mead(const std::function<double(std::span<const double>)>& f,
                                std::vector<double> start, std::vector<double> step, double tol,
                                std::size_t max_iter) {
  const std::size_t dim = start.size();
  if (step.size() != dim) throw std::invalid_argument("nelder_mead: step size mismatch");

  auto eval = [&f](const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step[i];
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto affine = [dim](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    double spread = 0.0;
    for (const auto& v : simplex) {
      for (std::size_t i = 0; i < dim; ++i) {
        spread = std::max(spread, std::abs(v[i] - simplex[best][i]));
      }
    }
    if (spread < tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i] / static_cast<double>(dim);
    }

    const auto reflected = affine(centroid, simplex[worst], -1.0);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const auto expanded = affine(centroid, simplex[worst], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto contracted =
        outside ? affine(centroid, reflected, 0.5) : affine(centroid, simplex[worst], 0.5);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == best) continue;
      simplex[v] = affine(simplex[best], simplex[v], 0.5);
      values[v] = eval(simplex[v]);
    }
  }
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  return simplex[static_cast<std::size_t>(best)];
}

FitReport fit_least_squares(const Histogram& hist) {
  FitReport report;
  report.method = FitMethod::kLeastSquares;
  hist.validate();
  report.n = hist.total();
  if (!(report.n > 0.0)) {
    report.failure = "histogram is empty";
    return report;
  }
  if (hist.nonzero_bins() < 3) {
    report.failure = "degenerate histogram: fewer than 3 nonzero bins";
    return report;
  }

  const FitGrid grid = least_squares_grid(hist);
  const GridPoint seed = grid_search(hist, grid);
  const double dk = std::log(grid.k[1] / grid.k[0]);
  const double dl = std::log(grid.lambda[1] / grid.lambda[0]);

  auto objective = [&hist](std::span<const double> x) {
    return least_squares_objective(hist, {std::exp(x[0]), std::exp(x[1])});
  };
  const auto best = nelder_mead(
      objective, {std::log(grid.k[seed.k_index]), std::log(grid.lambda[seed.lambda_index])},
      {dk, dl}, 1e-6);

  report.params = {std::exp(best[0]), std::exp(best[1])};
  report.objective = least_squares_objective(hist, report.params);
  report.ks = ks_statistic(hist, report.params);
  return report;
}

FitReport fit_mle(std::span<const double> samples) {
  FitReport report;
  report.method = FitMethod::kMle;
  report.n = static_cast<double>(samples.size());
  if (samples.size() < 2) {
    report.failure = "need at least 2 samples";
    return report;
  }
  double xmax = 0.0;
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      report.failure = "samples must be finite and > 0 (shift count data by +0.5)";
      return report;
    }
    xmax = std::max(xmax, x);
  }
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  if (*lo_it == *hi_it) {
    report.failure = "all samples are identical";
    return report;
  }

  // Work on y = x / xmax <= 1 so y^k never overflows; the score is scale-free.
  std::vector<double> logy(samples.size());
  double mean_log = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    logy[i] = std::log(samples[i] / xmax);
    mean_log += logy[i];
  }
  mean_log /= static_cast<double>(samples.size());

  auto power_mean = [&logy](double k) {
    double s = 0.0;
    for (double ly : logy) s += std::exp(k * ly);
    return s;
  };
  auto score = [&](double k) {
    double s = 0.0;
    double sl = 0.0;
    for (double ly : logy) {
      const double yk = std::exp(k * ly);
      s += yk;
      sl += yk * ly;
    }
    return sl / s - 1.0 / k - mean_log;
  };

  double lo = 1e-3;
  double hi = 1e3;
  double k = 0.0;
  if (score(lo) >= 0.0) {
    k = lo;
  } else if (score(hi) <= 0.0) {
    k = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (score(mid) < 0.0 ? lo : hi) = mid;
    }
    k = 0.5 * (lo + hi);
  }
  const double lambda =
      xmax * std::pow(power_mean(k) / static_cast<double>(samples.size()), 1.0 / k);

  report.params = {k, lambda};
  double nll = 0.0;
  for (double x : samples) {
    const double z = x / lambda;
    nll -= std::log(k / lambda) + (k - 1.0) * std::log(z) - std::pow(z, k);
  }
  report.objective = nll;
  report.ks = ks_statistic(samples, report.params);
  return report;
}

double ks_statistic(std::span<const double> samples, const WeibullParams& w) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no data");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = weibull_cdf(w, sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_statistic(const Histogram& hist, const WeibullParams& w) {
  const double total = hist.total();
  if (!(total > 0.0)) throw std::invalid_argument("ks_statistic: no data");
  double cum = 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    d = std::max(d, std::abs(cum - weibull_cdf(w, hist.lower_edge(i))));
    cum += hist.counts[i] / total;
    d = std::max(d, std::abs(cum - weibull_cdf(w, hist.upper_edge(i))));
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace infoflow
