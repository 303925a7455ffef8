#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "wavn/consensus.hpp"
#include "wavn/domain.hpp"
#include "wavn/ledger.hpp"
#include "wavn/random.hpp"

namespace wavn {

/// Scales the match qualities drawn for one robot pair during the
/// inclusive loop window [start_loop, end_loop]. Loops are numbered from 1.
struct DegradationScenario {
  RobotPair pair;
  std::size_t start_loop = 1;
  std::size_t end_loop = 1;
  double factor = 0.1;

  /// Throws ConfigError when the window or factor is out of range for `config`.
  void validate(const WorldConfig& config) const;
  bool applies(RobotPair p, std::size_t loop) const noexcept {
    return p == pair && loop >= start_loop && loop <= end_loop;
  }

  friend bool operator==(const DegradationScenario&, const DegradationScenario&) = default;
};

struct SeriesPoint {
  std::uint64_t block_index = 0;
  double avg_navigability = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Common-landmark counts over all pairs and loops seen so far.
struct CommonLandmarkStats {
  std::optional<std::size_t> max_count;
  std::optional<std::size_t> min_count;

  void record(std::size_t count) noexcept;
};

struct ExperimentState {
  WorldConfig config;
  std::optional<DegradationScenario> scenario;
  World world;
  Chain chain;
  /// Observations awaiting a block; tx ids are assigned when sealed.
  std::deque<Transaction> pending;
  /// Completed loops.
  std::size_t loop_index = 0;
  StreamSet streams;
  std::optional<VisibilitySnapshot> snapshot;
  std::vector<SeriesPoint> series;
  /// trajectory[0] is the initial placement; trajectory[k] the positions used in loop k.
  std::vector<std::vector<Vec2>> trajectory;
  CommonLandmarkStats common_stats;

  StakeTable stakes() const { return StakeTable::from_robots(world.robots); }
  double total_stake() const noexcept;
};

/// Validates inputs, places the world and records the initial trajectory row.
ExperimentState make_experiment(const WorldConfig& config,
                                std::optional<DegradationScenario> scenario = std::nullopt);

/// Moves every robot by a per-axis uniform draw in [-step, +step], clamped
/// to the world bounds, and appends a trajectory row.
void step_movement(ExperimentState& state);

/// Recognition by distance <= sensing_radius. For each pair (in pair_index
/// order) and each common landmark (ascending), draws omega on [0,1) from the
/// quality stream, then applies an active degradation scenario. Uses the
/// loop number loop_index + 1.
VisibilitySnapshot compute_visibility(ExperimentState& state);

/// Queues one PairObservation per pair with at least one common landmark.
/// Returns the number queued.
std::size_t emit_transactions(ExperimentState& state, const VisibilitySnapshot& snapshot);

enum class SealMode {
  threshold,  // seal full batches only
  drain,      // also seal a non-empty remainder
};

/// Seals batches of block_size pending observations. Each block's generator
/// is elected from N_PoS computed on the chain state before that block, gets
/// a GeneratorReward appended to the batch, and is credited generator_reward
/// stake. Returns the indices of the new blocks.
std::vector<std::size_t> maybe_seal_blocks(ExperimentState& state,
                                           SealMode mode = SealMode::threshold);

/// One loop: movement, visibility, emission, threshold sealing.
void run_loop(ExperimentState& state);

/// make_experiment, config.loops x run_loop, then a draining seal.
ExperimentState run_experiment(const WorldConfig& config,
                               std::optional<DegradationScenario> scenario = std::nullopt);

/// Pair with the most PairObservation transactions; ties go to the smallest
/// pair in (first, second) order. Requires at least two robots.
RobotPair highest_traffic_pair(const Chain& chain);

}  // namespace wavn
