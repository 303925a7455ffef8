#include "wavn/navigability.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wavn/error.hpp"

namespace wavn {

double alpha_importance(const PairCounts& counts, RobotId i, RobotId j, std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("importance needs at least one level");
  const std::uint64_t c = counts.count(i, j);
  const std::uint64_t capped = std::min<std::uint64_t>(c, levels);
  return static_cast<double>(capped) / static_cast<double>(levels);
}

AlphaMatrix::AlphaMatrix(std::size_t n_robots) : n_(n_robots), values_(n_robots * n_robots, 0.0) {}

AlphaMatrix AlphaMatrix::from_counts(const PairCounts& counts, std::size_t levels) {
  const std::size_t n = counts.robot_count();
  AlphaMatrix alpha(n);
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) alpha.set(i, j, alpha_importance(counts, i, j, levels));
  }
  return alpha;
}

double AlphaMatrix::operator()(RobotId i, RobotId j) const {
  if (i >= n_ || j >= n_) throw IndexError("alpha index out of range");
  return values_[i * n_ + j];
}

void AlphaMatrix::set(RobotId i, RobotId j, double value) {
  if (i >= n_ || j >= n_) throw IndexError("alpha index out of range");
  if (i == j) throw InvalidPairError("alpha diagonal is fixed at zero");
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  values_[i * n_ + j] = value;
  values_[j * n_ + i] = value;
}

double NavigabilityMatrix::row_sum(RobotId i) const {
  if (i >= n) throw IndexError("row out of range");
  double sum = 0.0;
  for (RobotId j = 0; j < n; ++j) sum += entries[i * n + j];
  return sum;
}

std::vector<double> NavigabilityMatrix::row_sums() const {
  std::vector<double> sums(n, 0.0);
  for (RobotId i = 0; i < n; ++i) sums[i] = row_sum(i);
  return sums;
}

namespace {

void check_dimensions(const StakeTable& table, const VisibilitySnapshot& snapshot,
                      const AlphaMatrix& alpha) {
  const std::size_t n = snapshot.robot_count();
  if (table.size() != n || alpha.size() != n) {
    throw DimensionError("team size mismatch: stakes " + std::to_string(table.size()) +
                         ", snapshot " + std::to_string(n) + ", alpha " +
                         std::to_string(alpha.size()));
  }
}

}  // namespace

double navigability(const StakeTable& table, const VisibilitySnapshot& snapshot,
                    const AlphaMatrix& alpha, RobotId i) {
  check_dimensions(table, snapshot, alpha);
  if (i >= snapshot.robot_count()) throw IndexError("robot index out of range");
  const double weight = stake_weight(table, i);
  // Same summation order as a row of navigability_matrix, so the two agree bit for bit.
  double total = 0.0;
  for (RobotId j = 0; j < snapshot.robot_count(); ++j) {
    if (j == i) continue;
    total += alpha(i, j) * (weight * common_quality_sum(snapshot, i, j));
  }
  return total;
}

NavigabilityMatrix navigability_matrix(const StakeTable& table, const VisibilitySnapshot& snapshot,
                                       const AlphaMatrix& alpha) {
  check_dimensions(table, snapshot, alpha);
  const std::size_t n = snapshot.robot_count();
  NavigabilityMatrix out{n, std::vector<double>(n * n, 0.0), 0};
  if (n == 0) return out;
  const std::vector<double> weights = stake_weights(table);

  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = 0; j < n; ++j) {
      if (j == i) continue;
      const double score = weights[i] * common_quality_sum(snapshot, i, j, &out.evaluations);
      out.entries[i * n + j] = alpha(i, j) * score;
    }
  }
  return out;
}

double average_navigability(const NavigabilityMatrix& matrix) {
  if (matrix.n < 2) throw UndefinedAverageError("average navigability needs at least two robots");
  double sum = 0.0;
  for (RobotId i = 0; i < matrix.n; ++i) {
    for (RobotId j = 0; j < matrix.n; ++j) {
      if (i != j) sum += matrix.entries[i * matrix.n + j];
    }
  }
  return sum / static_cast<double>(matrix.n * (matrix.n - 1));
}

}  // namespace wavn
