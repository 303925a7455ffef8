#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavn/random.hpp"

namespace wavn {

using RobotId = std::size_t;
using LandmarkId = std::size_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b) noexcept;

/// Experiment parameters. Defaults reproduce the 10-robot / 20-landmark desk run.
struct WorldConfig {
  double width = 200.0;
  double height = 200.0;
  std::size_t n_robots = 10;
  std::size_t n_landmarks = 20;
  std::size_t loops = 10;
  // Calibrated so the default run lands near 45 blocks / 458 transactions.
  double sensing_radius = 85.0;
  double step_size = 15.0;
  std::size_t block_size = 10;
  std::uint64_t seed = 0;
  double generator_reward = 0.1;
  double initial_stake = 1.0;

  /// Throws ConfigError naming the first violated field.
  void validate() const;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

struct RobotState {
  RobotId id = 0;
  Vec2 position;
  double stake = 0.0;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct Landmark {
  LandmarkId id = 0;
  Vec2 position;

  friend bool operator==(const Landmark&, const Landmark&) = default;
};

/// Unordered robot pair stored as (first < second).
///
/// Build through `RobotPair::of`, which rejects i == j. The members stay
/// public so ledger records can be decoded (and, in tests, tampered with)
/// without going through the invariant check.
struct RobotPair {
  RobotId first = 0;
  RobotId second = 1;

  static RobotPair of(RobotId i, RobotId j);

  bool contains(RobotId r) const noexcept { return first == r || second == r; }

  friend auto operator<=>(const RobotPair&, const RobotPair&) = default;
};

/// Index of the unordered pair (i, j) in the row-major upper triangle of
/// an n x n matrix: (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::size_t pair_index(std::size_t n, RobotPair pair) noexcept;
std::size_t pair_count(std::size_t n) noexcept;

struct ObservationMatch {
  RobotPair pair;
  LandmarkId landmark_id = 0;
  double quality = 0.0;
  std::size_t loop_index = 0;
};

/// Symmetric per-pair transaction tallies, the view of the ledger that
/// importance weighting reads.
class PairCounts {
 public:
  PairCounts() = default;
  explicit PairCounts(std::size_t n_robots);

  std::size_t robot_count() const noexcept { return n_; }
  std::uint64_t count(RobotId i, RobotId j) const;
  void add(RobotPair pair, std::uint64_t amount = 1);

  friend bool operator==(const PairCounts&, const PairCounts&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> counts_;
};

struct World {
  std::vector<RobotState> robots;
  std::vector<Landmark> landmarks;

  friend bool operator==(const World&, const World&) = default;
};

struct WorldInit {
  World world;
  StreamSet streams;
};

/// Places robots, then landmarks, uniformly over [0,width]x[0,height] using
/// the placement stream derived from `config.seed`. Every stake starts at
/// `config.initial_stake`.
WorldInit init_world(const WorldConfig& config);

}  // namespace wavn
