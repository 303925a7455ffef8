#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wavn/domain.hpp"
#include "wavn/random.hpp"

namespace wavn {

/// Stakes s_1..s_n, each non-negative and finite.
class StakeTable {
 public:
  StakeTable() = default;
  explicit StakeTable(std::vector<double> stakes);

  static StakeTable from_robots(std::span<const RobotState> robots);

  std::size_t size() const noexcept { return stakes_.size(); }
  double operator[](RobotId i) const { return stakes_.at(i); }
  std::span<const double> values() const noexcept { return stakes_; }
  double total() const noexcept;
  bool degenerate() const noexcept { return !(total() > 0.0); }

  friend bool operator==(const StakeTable&, const StakeTable&) = default;

 private:
  std::vector<double> stakes_;
};

/// W(r_i) = s_i / sum_j s_j.
double stake_weight(const StakeTable& table, RobotId i);
std::vector<double> stake_weights(const StakeTable& table);

/// Which landmarks each robot recognizes during one loop, plus the match
/// quality of every landmark two robots have in common.
///
/// A quality slot exists exactly for the intersection of two robots'
/// recognized sets; slots default to 0 until assigned.
class VisibilitySnapshot {
 public:
  VisibilitySnapshot() = default;
  VisibilitySnapshot(std::size_t n_robots, std::size_t n_landmarks);

  std::size_t robot_count() const noexcept { return n_; }
  std::size_t landmark_count() const noexcept { return m_; }

  void recognize(RobotId robot, LandmarkId landmark);
  bool recognizes(RobotId robot, LandmarkId landmark) const;
  std::vector<LandmarkId> recognized(RobotId robot) const;

  /// Throws InvalidPairError for i == j and std::invalid_argument when
  /// `landmark` is not common to both robots or `quality` is outside [0,1].
  void set_quality(RobotId i, RobotId j, LandmarkId landmark, double quality);
  double quality(RobotId i, RobotId j, LandmarkId landmark) const;

  /// Unchecked fast path for scans that already verified the indicator.
  double quality_unchecked(std::size_t pair_slot, LandmarkId landmark) const noexcept {
    return quality_[pair_slot * m_ + landmark];
  }
  bool recognizes_unchecked(RobotId robot, LandmarkId landmark) const noexcept {
    return seen_[robot * m_ + landmark] != 0;
  }

 private:
  void check_robot(RobotId r) const;
  void check_landmark(LandmarkId k) const;
  std::size_t check_pair(RobotId i, RobotId j) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> seen_;
  std::vector<double> quality_;
};

/// I(l_k, r_i, r_j): 1 iff both robots recognize landmark k.
int indicator(const VisibilitySnapshot& snapshot, LandmarkId k, RobotId i, RobotId j);

/// Sorted ids of landmarks both robots recognize.
std::vector<LandmarkId> common_landmarks(const VisibilitySnapshot& snapshot, RobotId i, RobotId j);

/// sum_k omega_k * I(l_k, r_i, r_j), scanning all m landmarks.
/// `evaluations`, when given, is incremented once per indicator evaluated.
double common_quality_sum(const VisibilitySnapshot& snapshot, RobotId i, RobotId j,
                          std::uint64_t* evaluations = nullptr);

/// C_PoS(r_i, r_j) = W(r_i) * sum_k omega_k * I(l_k, r_i, r_j). Ordered in (i, j).
double consensus_score(const StakeTable& table, const VisibilitySnapshot& snapshot, RobotId i,
                       RobotId j);

/// Every ordered consensus score, with each unordered pair's landmark scan
/// done once and shared by C(i,j) and C(j,i).
struct PairwiseConsensus {
  std::size_t n = 0;
  std::vector<double> scores;  // row-major n x n, zero diagonal
  std::uint64_t indicator_scans = 0;

  double at(RobotId i, RobotId j) const { return scores.at(i * n + j); }
};

PairwiseConsensus pairwise_consensus(const StakeTable& table, const VisibilitySnapshot& snapshot);

enum class ElectionTier {
  weights,  // proportional to the supplied weights
  stake,    // supplied weights summed to zero; proportional to stake
  uniform,  // stakes degenerate as well
};

struct Election {
  RobotId generator = 0;
  ElectionTier tier = ElectionTier::weights;
};

/// Inverse-CDF draw proportional to `weights`, consuming exactly one
/// uniform01() from `rng` whichever tier is used. All-zero weights fall back
/// to `fallback` stakes, and a degenerate fallback to a uniform pick.
Election elect_generator(std::span<const double> weights, const StakeTable& fallback,
                         RandomStream& rng);

/// Draw proportional to weights over index 0..weights.size()-1.
/// Requires a positive sum. Exposed for the tier implementations and tests.
std::size_t sample_proportional(std::span<const double> weights, double u01);

}  // namespace wavn
