#include "wavn/domain.hpp"

#include <cmath>
#include <string>

#include "wavn/error.hpp"

namespace wavn {

namespace {

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

double distance(Vec2 a, Vec2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

void WorldConfig::validate() const {
  // Negated comparisons so NaN fails every check.
  require(std::isfinite(width) && width > 0.0, "width", "must be > 0");
  require(std::isfinite(height) && height > 0.0, "height", "must be > 0");
  require(n_robots >= 1, "n_robots", "must be >= 1");
  require(std::isfinite(sensing_radius) && sensing_radius > 0.0, "sensing_radius", "must be > 0");
  require(std::isfinite(step_size) && step_size >= 0.0, "step_size", "must be >= 0");
  require(block_size >= 1, "block_size", "must be >= 1");
  require(std::isfinite(initial_stake) && initial_stake > 0.0, "initial_stake", "must be > 0");
  require(std::isfinite(generator_reward) && generator_reward >= 0.0, "generator_reward",
          "must be >= 0");
}

RobotPair RobotPair::of(RobotId i, RobotId j) {
  if (i == j) {
    throw InvalidPairError("robot pair needs two distinct robots, got (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
  }
  return i < j ? RobotPair{i, j} : RobotPair{j, i};
}

std::size_t pair_count(std::size_t n) noexcept { return n * (n - (n > 0 ? 1 : 0)) / 2; }

std::size_t pair_index(std::size_t n, RobotPair pair) noexcept {
  // Rows before `first` hold (n-1) + (n-2) + ... + (n-first) slots.
  const std::size_t i = pair.first;
  return i * (2 * n - i - 1) / 2 + (pair.second - i - 1);
}

PairCounts::PairCounts(std::size_t n_robots) : n_(n_robots), counts_(pair_count(n_robots), 0) {}

std::uint64_t PairCounts::count(RobotId i, RobotId j) const {
  const RobotPair p = RobotPair::of(i, j);
  if (p.second >= n_) throw InvalidPairError("robot index out of range in pair count");
  return counts_[pair_index(n_, p)];
}

void PairCounts::add(RobotPair pair, std::uint64_t amount) {
  if (pair.first >= pair.second || pair.second >= n_) {
    throw InvalidPairError("invalid pair in pair count");
  }
  counts_[pair_index(n_, pair)] += amount;
}

WorldInit init_world(const WorldConfig& config) {
  config.validate();
  WorldInit init{World{}, StreamSet::from_root(config.seed)};
  RandomStream& rng = init.streams.placement;

  init.world.robots.reserve(config.n_robots);
  for (std::size_t i = 0; i < config.n_robots; ++i) {
    const double x = rng.uniform(0.0, config.width);
    const double y = rng.uniform(0.0, config.height);
    init.world.robots.push_back(RobotState{i, {x, y}, config.initial_stake});
  }
  init.world.landmarks.reserve(config.n_landmarks);
  for (std::size_t k = 0; k < config.n_landmarks; ++k) {
    const double x = rng.uniform(0.0, config.width);
    const double y = rng.uniform(0.0, config.height);
    init.world.landmarks.push_back(Landmark{k, {x, y}});
  }
  return init;
}

}  // namespace wavn
