#pragma once

#include <cstdint>

namespace qmdisc {

/// splitmix64 finalizer; the only mixing primitive used for seeding.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key derivation: every random stream is a pure function of the user seed,
/// a stream tag naming the task, and the index of the item within the task.
/// This is what makes results independent of the worker count.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) + index);
}

/// Small counter-based generator (splitmix64 sequence).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>((*this)() % span);
  }

 private:
  std::uint64_t state_;
};

/// Stream tags for derive_seed.
namespace streams {
inline constexpr std::uint64_t kDefectSampling = 0x64656665637431ULL;
inline constexpr std::uint64_t kConfigurations = 0x636f6e66696731ULL;
inline constexpr std::uint64_t kLpSpace = 0x6c7073706163ULL;
inline constexpr std::uint64_t kExperiments = 0x65787065726dULL;
}  // namespace streams

}  // namespace qmdisc
