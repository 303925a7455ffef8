#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavn/consensus.hpp"
#include "wavn/domain.hpp"

namespace wavn {

/// Number of importance levels: pairs with this many shared transactions
/// (or more) get full importance.
inline constexpr std::size_t kImportanceLevels = 10;

/// alpha_ij = min(count(i,j), levels) / levels.
double alpha_importance(const PairCounts& counts, RobotId i, RobotId j,
                        std::size_t levels = kImportanceLevels);

/// Symmetric n x n importance matrix with zero diagonal, entries in [0,1].
class AlphaMatrix {
 public:
  AlphaMatrix() = default;
  explicit AlphaMatrix(std::size_t n_robots);

  static AlphaMatrix from_counts(const PairCounts& counts, std::size_t levels = kImportanceLevels);

  std::size_t size() const noexcept { return n_; }
  double operator()(RobotId i, RobotId j) const;
  /// Sets both (i,j) and (j,i).
  void set(RobotId i, RobotId j, double value);

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// M[i][j] = alpha_ij * C_PoS(r_i, r_j); row sums are N_PoS(r_i).
struct NavigabilityMatrix {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major
  /// (landmark, ordered pair) indicator evaluations performed to build it.
  std::uint64_t evaluations = 0;

  double at(RobotId i, RobotId j) const { return entries.at(i * n + j); }
  double row_sum(RobotId i) const;
  std::vector<double> row_sums() const;
};

/// N_PoS(r_i) = sum_{j != i} alpha_ij * C_PoS(r_i, r_j).
double navigability(const StakeTable& table, const VisibilitySnapshot& snapshot,
                    const AlphaMatrix& alpha, RobotId i);

/// Full matrix, every ordered pair scanning all m landmarks; the evaluation
/// counter ends at exactly n(n-1)m.
NavigabilityMatrix navigability_matrix(const StakeTable& table, const VisibilitySnapshot& snapshot,
                                       const AlphaMatrix& alpha);

/// Mean of the n(n-1) off-diagonal entries.
double average_navigability(const NavigabilityMatrix& matrix);

}  // namespace wavn
