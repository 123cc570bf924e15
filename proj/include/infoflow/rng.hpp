#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace infoflow {

// SplitMix64 finalizer; used only to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream `stream_id` under `root_seed`. Streams depend only on the
/// pair, so results do not depend on which thread runs which stream.
class StreamRng {
 public:
  /// Reserved stream ids for non-agent draws.
  static constexpr std::uint64_t kBirthStream = std::numeric_limits<std::uint64_t>::max();
  static constexpr std::uint64_t kSampleStream = kBirthStream - 1;

  StreamRng(std::uint64_t root_seed, std::uint64_t stream_id)
      : engine_(mix64(mix64(root_seed) ^ mix64(~stream_id))) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace infoflow
