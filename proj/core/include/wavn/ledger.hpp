#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavn/canonical.hpp"
#include "wavn/domain.hpp"

namespace wavn {

enum class TxKind : std::uint8_t {
  pair_observation,
  generator_reward,
};

std::string_view to_string(TxKind kind) noexcept;

struct LandmarkMatch {
  LandmarkId landmark = 0;
  double quality = 0.0;

  friend bool operator==(const LandmarkMatch&, const LandmarkMatch&) = default;
};

/// Ledger record. Pair observations use `pair` and `matches`; generator
/// rewards use `generator` and `reward`. The unused fields stay at their
/// defaults and are not encoded.
struct Transaction {
  std::uint64_t tx_id = 0;
  TxKind kind = TxKind::pair_observation;
  RobotPair pair;
  std::vector<LandmarkMatch> matches;
  RobotId generator = 0;
  double reward = 0.0;
  std::uint64_t loop_index = 0;

  static Transaction observation(std::uint64_t tx_id, RobotPair pair,
                                 std::vector<LandmarkMatch> matches, std::uint64_t loop_index);
  static Transaction generator_reward(std::uint64_t tx_id, RobotId generator, double reward,
                                      std::uint64_t loop_index);

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct Block {
  std::uint64_t index = 0;
  Digest prev_hash{};
  std::vector<Transaction> transactions;
  RobotId generator = 0;
  double avg_navigability = 0.0;
  Digest hash{};

  friend bool operator==(const Block&, const Block&) = default;
};

/// Canonical text of one transaction: a JSON object with sorted keys, no
/// whitespace and shortest round-trip numbers.
std::string encode_transaction(const Transaction& tx);

/// The hashed encoding: every block field except `hash`.
std::string encode_block_body(const Block& block);

/// One ledger-dump line (without the trailing newline): the body with the
/// `hash` field inserted at its sorted position.
std::string encode_block_record(const Block& block);

/// Parses one dump line. Throws LedgerError on malformed input, including a
/// record that would not re-encode to the same bytes.
Block decode_block_record(std::string_view line);

/// sha256(encode_block_body(block)).
Digest compute_block_hash(const Block& block);

/// Index of the first block whose stored hash or back-link does not match,
/// or nullopt when the whole chain verifies.
std::optional<std::size_t> verify_chain(std::span<const Block> blocks);

/// Linear scan: PairObservation transactions over {i, j}.
std::uint64_t pair_tx_count(std::span<const Block> blocks, RobotId i, RobotId j);

std::vector<std::size_t> generator_histogram(std::span<const Block> blocks, std::size_t n_robots);

/// Append-only hash chain for a team of `n_robots`.
class Chain {
 public:
  explicit Chain(std::size_t n_robots = 0);

  /// Seals `transactions` into a new block. Transaction ids must continue
  /// from `next_tx_id()`. Throws LedgerError for an empty batch, an id
  /// discontinuity, an invalid generator or a malformed transaction.
  const Block& append_block(std::vector<Transaction> transactions, RobotId generator,
                            double avg_navigability);

  std::size_t robot_count() const noexcept { return n_robots_; }
  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  std::uint64_t next_tx_id() const noexcept { return next_tx_id_; }
  std::uint64_t transaction_count() const noexcept { return next_tx_id_; }

  /// Served from an index maintained on append; matches the linear scan.
  std::uint64_t pair_tx_count(RobotId i, RobotId j) const;
  const PairCounts& pair_counts() const noexcept { return counts_; }
  std::vector<std::size_t> generator_histogram() const;

  std::optional<std::size_t> verify() const { return verify_chain(blocks_); }

 private:
  void validate_transaction(const Transaction& tx) const;

  std::size_t n_robots_ = 0;
  std::vector<Block> blocks_;
  PairCounts counts_;
  std::uint64_t next_tx_id_ = 0;
};

/// One encode_block_record line per block, each terminated by '\n'.
void write_ledger(std::ostream& out, std::span<const Block> blocks);
std::vector<Block> read_ledger(std::istream& in);

}  // namespace wavn
