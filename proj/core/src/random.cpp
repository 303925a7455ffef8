#include "wavn/random.hpp"

namespace wavn {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, Stream stream) noexcept {
  std::uint64_t state = root + static_cast<std::uint64_t>(stream) * kGolden;
  return splitmix64(state);
}

StreamSet StreamSet::from_root(std::uint64_t root) {
  return StreamSet{
      RandomStream(derive_seed(root, Stream::placement)),
      RandomStream(derive_seed(root, Stream::movement)),
      RandomStream(derive_seed(root, Stream::quality)),
      RandomStream(derive_seed(root, Stream::election)),
  };
}

}  // namespace wavn
