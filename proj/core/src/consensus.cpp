#include "wavn/consensus.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wavn/error.hpp"

namespace wavn {

StakeTable::StakeTable(std::vector<double> stakes) : stakes_(std::move(stakes)) {
  for (double s : stakes_) {
    if (!std::isfinite(s) || s < 0.0) {
      throw std::invalid_argument("stakes must be finite and non-negative");
    }
  }
}

StakeTable StakeTable::from_robots(std::span<const RobotState> robots) {
  std::vector<double> stakes;
  stakes.reserve(robots.size());
  for (const RobotState& r : robots) stakes.push_back(r.stake);
  return StakeTable(std::move(stakes));
}

double StakeTable::total() const noexcept {
  return std::accumulate(stakes_.begin(), stakes_.end(), 0.0);
}

double stake_weight(const StakeTable& table, RobotId i) {
  if (i >= table.size()) {
    throw IndexError("robot " + std::to_string(i) + " outside stake table of size " +
                     std::to_string(table.size()));
  }
  const double total = table.total();
  if (!(total > 0.0)) throw DegenerateStakesError("stake table sums to zero");
  return table[i] / total;
}

std::vector<double> stake_weights(const StakeTable& table) {
  const double total = table.total();
  if (!(total > 0.0)) throw DegenerateStakesError("stake table sums to zero");
  std::vector<double> weights;
  weights.reserve(table.size());
  for (double s : table.values()) weights.push_back(s / total);
  return weights;
}

VisibilitySnapshot::VisibilitySnapshot(std::size_t n_robots, std::size_t n_landmarks)
    : n_(n_robots),
      m_(n_landmarks),
      seen_(n_robots * n_landmarks, 0),
      quality_(pair_count(n_robots) * n_landmarks, 0.0) {}

void VisibilitySnapshot::check_robot(RobotId r) const {
  if (r >= n_) throw IndexError("robot " + std::to_string(r) + " out of range");
}

void VisibilitySnapshot::check_landmark(LandmarkId k) const {
  if (k >= m_) throw IndexError("landmark " + std::to_string(k) + " out of range");
}

std::size_t VisibilitySnapshot::check_pair(RobotId i, RobotId j) const {
  check_robot(i);
  check_robot(j);
  return pair_index(n_, RobotPair::of(i, j));
}

void VisibilitySnapshot::recognize(RobotId robot, LandmarkId landmark) {
  check_robot(robot);
  check_landmark(landmark);
  seen_[robot * m_ + landmark] = 1;
}

bool VisibilitySnapshot::recognizes(RobotId robot, LandmarkId landmark) const {
  check_robot(robot);
  check_landmark(landmark);
  return recognizes_unchecked(robot, landmark);
}

std::vector<LandmarkId> VisibilitySnapshot::recognized(RobotId robot) const {
  check_robot(robot);
  std::vector<LandmarkId> out;
  for (LandmarkId k = 0; k < m_; ++k) {
    if (recognizes_unchecked(robot, k)) out.push_back(k);
  }
  return out;
}

void VisibilitySnapshot::set_quality(RobotId i, RobotId j, LandmarkId landmark, double quality) {
  const std::size_t slot = check_pair(i, j);
  check_landmark(landmark);
  if (!(recognizes_unchecked(i, landmark) && recognizes_unchecked(j, landmark))) {
    throw std::invalid_argument("landmark " + std::to_string(landmark) +
                                " is not common to robots " + std::to_string(i) + " and " +
                                std::to_string(j));
  }
  if (!(quality >= 0.0 && quality <= 1.0)) {
    throw std::invalid_argument("match quality must lie in [0, 1]");
  }
  quality_[slot * m_ + landmark] = quality;
}

double VisibilitySnapshot::quality(RobotId i, RobotId j, LandmarkId landmark) const {
  const std::size_t slot = check_pair(i, j);
  check_landmark(landmark);
  if (!(recognizes_unchecked(i, landmark) && recognizes_unchecked(j, landmark))) {
    throw std::invalid_argument("no quality slot: landmark not common to the pair");
  }
  return quality_unchecked(slot, landmark);
}

int indicator(const VisibilitySnapshot& snapshot, LandmarkId k, RobotId i, RobotId j) {
  if (i == j) throw InvalidPairError("indicator needs two distinct robots");
  return snapshot.recognizes(i, k) && snapshot.recognizes(j, k) ? 1 : 0;
}

std::vector<LandmarkId> common_landmarks(const VisibilitySnapshot& snapshot, RobotId i,
                                         RobotId j) {
  std::vector<LandmarkId> out;
  for (LandmarkId k = 0; k < snapshot.landmark_count(); ++k) {
    if (indicator(snapshot, k, i, j) == 1) out.push_back(k);
  }
  return out;
}

double common_quality_sum(const VisibilitySnapshot& snapshot, RobotId i, RobotId j,
                          std::uint64_t* evaluations) {
  if (i == j) throw InvalidPairError("consensus needs two distinct robots");
  if (i >= snapshot.robot_count() || j >= snapshot.robot_count()) {
    throw IndexError("robot index out of range");
  }
  const std::size_t slot = pair_index(snapshot.robot_count(), RobotPair::of(i, j));
  const std::size_t m = snapshot.landmark_count();
  double sum = 0.0;
  for (LandmarkId k = 0; k < m; ++k) {
    if (snapshot.recognizes_unchecked(i, k) && snapshot.recognizes_unchecked(j, k)) {
      sum += snapshot.quality_unchecked(slot, k);
    }
  }
  if (evaluations != nullptr) *evaluations += m;
  return sum;
}

double consensus_score(const StakeTable& table, const VisibilitySnapshot& snapshot, RobotId i,
                       RobotId j) {
  const double sum = common_quality_sum(snapshot, i, j);
  return stake_weight(table, i) * sum;
}

PairwiseConsensus pairwise_consensus(const StakeTable& table, const VisibilitySnapshot& snapshot) {
  const std::size_t n = snapshot.robot_count();
  if (table.size() != n) throw DimensionError("stake table and snapshot disagree on team size");
  const std::vector<double> weights = stake_weights(table);

  PairwiseConsensus out{n, std::vector<double>(n * n, 0.0), 0};
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) {
      const double sum = common_quality_sum(snapshot, i, j, &out.indicator_scans);
      out.scores[i * n + j] = weights[i] * sum;
      out.scores[j * n + i] = weights[j] * sum;
    }
  }
  return out;
}

std::size_t sample_proportional(std::span<const double> weights, double u01) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("proportional sampling needs a positive sum");
  const double target = u01 * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  // Rounding can leave target == total; the top of the CDF belongs to the
  // last index with positive weight.
  return last_positive;
}

Election elect_generator(std::span<const double> weights, const StakeTable& fallback,
                         RandomStream& rng) {
  if (weights.empty()) throw IndexError("election over an empty team");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("election weights must be finite and non-negative");
    }
  }
  const double u = rng.uniform01();

  if (std::accumulate(weights.begin(), weights.end(), 0.0) > 0.0) {
    return {sample_proportional(weights, u), ElectionTier::weights};
  }
  if (fallback.size() != weights.size()) {
    throw DimensionError("fallback stake table does not match the weight vector");
  }
  if (!fallback.degenerate()) {
    return {sample_proportional(fallback.values(), u), ElectionTier::stake};
  }
  const auto n = weights.size();
  auto pick = static_cast<std::size_t>(u * static_cast<double>(n));
  if (pick >= n) pick = n - 1;
  return {pick, ElectionTier::uniform};
}

}  // namespace wavn
