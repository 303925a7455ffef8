#pragma once

#include <cstdint>
#include <random>

namespace wavn {

/// Independent random streams split off a single root seed. Each concern
/// draws only from its own stream, so adding draws to one never shifts
/// the sequence seen by another.
enum class Stream : std::uint64_t {
  placement = 1,
  movement = 2,
  quality = 3,
  election = 4,
};

/// One SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed of `stream`: splitmix64 applied to root + tag * 0x9E3779B97F4A7C15.
std::uint64_t derive_seed(std::uint64_t root, Stream stream) noexcept;

/// mt19937_64 with portable real conversions (the <random> distributions
/// are implementation-defined, so they are not used).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1): top 53 bits of one engine output scaled by 2^-53.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// lo + (hi - lo) * uniform01().
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::mt19937_64 engine_;
};

struct StreamSet {
  RandomStream placement;
  RandomStream movement;
  RandomStream quality;
  RandomStream election;

  static StreamSet from_root(std::uint64_t root);

  friend bool operator==(const StreamSet&, const StreamSet&) = default;
};

}  // namespace wavn
