#include "infoflow/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infoflow {

double Histogram::total() const noexcept {
  double s = 0.0;
  for (double c : counts) s += c;
  return s;
}

std::size_t Histogram::nonzero_bins() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; }));
}

void Histogram::validate() const {
  if (!(width > 0.0)) throw std::invalid_argument("histogram bin width must be > 0");
  for (double c : counts) {
    if (!(c >= 0.0)) throw std::invalid_argument("histogram counts must be nonnegative");
  }
}

Histogram histogram_from_integers(std::span<const long long> values) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  const long long hi = *std::max_element(values.begin(), values.end());
  if (*std::min_element(values.begin(), values.end()) < 0) {
    throw std::invalid_argument("integer histogram expects nonnegative values");
  }
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(hi) + 1, 0.0);
  for (long long v : values) h.counts[static_cast<std::size_t>(v)] += 1.0;
  return h;
}

Histogram histogram_from_samples(std::span<const double> samples, double width) {
  if (samples.empty()) throw std::invalid_argument("histogram of an empty sample");
  if (!(width > 0.0)) throw std::invalid_argument("histogram bin width must be > 0");
  double hi = 0.0;
  for (double x : samples) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("histogram expects finite nonnegative samples");
    }
    hi = std::max(hi, x);
  }
  Histogram h;
  h.width = width;
  h.counts.assign(static_cast<std::size_t>(std::floor(hi / width)) + 1, 0.0);
  for (double x : samples) h.counts[static_cast<std::size_t>(std::floor(x / width))] += 1.0;
  return h;
}

std::vector<double> expand_to_centers(const Histogram& hist) {
  std::vector<double> out;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const auto n = static_cast<std::size_t>(std::llround(hist.counts[i]));
    out.insert(out.end(), n, hist.center(i));
  }
  return out;
}

}  // namespace infoflow
