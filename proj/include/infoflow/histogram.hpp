#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace infoflow {

/// Equal-width bins; bin i covers [origin + i*width, origin + (i+1)*width).
struct Histogram {
  double origin = 0.0;
  double width = 1.0;
  std::vector<double> counts;

  std::size_t size() const noexcept { return counts.size(); }
  double lower_edge(std::size_t i) const noexcept { return origin + static_cast<double>(i) * width; }
  double upper_edge(std::size_t i) const noexcept { return lower_edge(i + 1); }
  double center(std::size_t i) const noexcept { return origin + (static_cast<double>(i) + 0.5) * width; }
  double total() const noexcept;
  std::size_t nonzero_bins() const noexcept;

  /// Throws std::invalid_argument on negative counts or non-positive width.
  void validate() const;
};

/// Unit-width histogram of nonnegative integers, bins 0..max.
Histogram histogram_from_integers(std::span<const long long> values);

/// Bins nonnegative reals into [0, w), [w, 2w), ... up to the maximum.
Histogram histogram_from_samples(std::span<const double> samples, double width = 1.0);

/// Replaces each count with its bin centre repeated `count` times (counts are
/// rounded to integers). Used to hand integer count data to sample-based fitters.
std::vector<double> expand_to_centers(const Histogram& hist);

}  // namespace infoflow
