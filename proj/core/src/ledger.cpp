#include "wavn/ledger.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "wavn/error.hpp"

namespace wavn {

std::string_view to_string(TxKind kind) noexcept {
  switch (kind) {
    case TxKind::pair_observation:
      return "pair_observation";
    case TxKind::generator_reward:
      return "generator_reward";
  }
  return "unknown";
}

Transaction Transaction::observation(std::uint64_t tx_id, RobotPair pair,
                                     std::vector<LandmarkMatch> matches,
                                     std::uint64_t loop_index) {
  Transaction tx;
  tx.tx_id = tx_id;
  tx.kind = TxKind::pair_observation;
  tx.pair = pair;
  tx.matches = std::move(matches);
  tx.loop_index = loop_index;
  return tx;
}

Transaction Transaction::generator_reward(std::uint64_t tx_id, RobotId generator, double reward,
                                          std::uint64_t loop_index) {
  Transaction tx;
  tx.tx_id = tx_id;
  tx.kind = TxKind::generator_reward;
  tx.generator = generator;
  tx.reward = reward;
  tx.loop_index = loop_index;
  return tx;
}

// ---------------------------------------------------------------------------
// Canonical encoding. Keys are emitted in sorted order by construction.

namespace {

void put_key(std::string& out, std::string_view key) {
  out.push_back('"');
  out.append(key);
  out.append("\":");
}

void put_u64(std::string& out, std::uint64_t v) { out.append(format_number(v)); }
void put_real(std::string& out, double v) { out.append(format_number(v)); }

void put_str(std::string& out, std::string_view v) {
  out.push_back('"');
  out.append(v);
  out.push_back('"');
}

void put_transaction(std::string& out, const Transaction& tx) {
  out.push_back('{');
  if (tx.kind == TxKind::generator_reward) {
    put_key(out, "generator");
    put_u64(out, tx.generator);
    out.push_back(',');
    put_key(out, "kind");
    put_str(out, to_string(tx.kind));
    out.push_back(',');
    put_key(out, "loop");
    put_u64(out, tx.loop_index);
    out.push_back(',');
    put_key(out, "reward");
    put_real(out, tx.reward);
  } else {
    put_key(out, "kind");
    put_str(out, to_string(tx.kind));
    out.push_back(',');
    put_key(out, "loop");
    put_u64(out, tx.loop_index);
    out.push_back(',');
    put_key(out, "matches");
    out.push_back('[');
    for (std::size_t i = 0; i < tx.matches.size(); ++i) {
      if (i > 0) out.push_back(',');
      out.push_back('{');
      put_key(out, "landmark");
      put_u64(out, tx.matches[i].landmark);
      out.push_back(',');
      put_key(out, "quality");
      put_real(out, tx.matches[i].quality);
      out.push_back('}');
    }
    out.push_back(']');
    out.push_back(',');
    put_key(out, "pair");
    out.push_back('[');
    put_u64(out, tx.pair.first);
    out.push_back(',');
    put_u64(out, tx.pair.second);
    out.push_back(']');
  }
  out.push_back(',');
  put_key(out, "tx_id");
  put_u64(out, tx.tx_id);
  out.push_back('}');
}

std::string encode_block(const Block& block, bool with_hash) {
  std::string out;
  out.reserve(256 + block.transactions.size() * 128);
  out.push_back('{');
  put_key(out, "avg_navigability");
  put_real(out, block.avg_navigability);
  out.push_back(',');
  put_key(out, "generator");
  put_u64(out, block.generator);
  out.push_back(',');
  if (with_hash) {
    put_key(out, "hash");
    put_str(out, to_hex(block.hash));
    out.push_back(',');
  }
  put_key(out, "index");
  put_u64(out, block.index);
  out.push_back(',');
  put_key(out, "prev_hash");
  put_str(out, to_hex(block.prev_hash));
  out.push_back(',');
  put_key(out, "transactions");
  out.push_back('[');
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    if (i > 0) out.push_back(',');
    put_transaction(out, block.transactions[i]);
  }
  out.append("]}");
  return out;
}

}  // namespace

std::string encode_transaction(const Transaction& tx) {
  std::string out;
  put_transaction(out, tx);
  return out;
}

std::string encode_block_body(const Block& block) { return encode_block(block, false); }
std::string encode_block_record(const Block& block) { return encode_block(block, true); }

Digest compute_block_hash(const Block& block) { return sha256(encode_block_body(block)); }

// ---------------------------------------------------------------------------
// Decoding.

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw LedgerError("malformed ledger record: " + what);
}

const json& field(const json& obj, const char* key, std::size_t expected_keys) {
  if (!obj.is_object() || obj.size() != expected_keys) malformed("unexpected field set");
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_u64(const json& v, const char* what) {
  if (!v.is_number_unsigned()) malformed(std::string(what) + " must be an unsigned integer");
  return v.get<std::uint64_t>();
}

double as_real(const json& v, const char* what) {
  if (!v.is_number()) malformed(std::string(what) + " must be a number");
  return v.get<double>();
}

Digest as_digest(const json& v, const char* what) {
  if (!v.is_string()) malformed(std::string(what) + " must be a hex string");
  const auto digest = digest_from_hex(v.get_ref<const std::string&>());
  if (!digest) malformed(std::string(what) + " must be 64 lower-case hex digits");
  return *digest;
}

Transaction decode_transaction(const json& obj) {
  if (!obj.is_object()) malformed("transaction must be an object");
  const auto kind_it = obj.find("kind");
  if (kind_it == obj.end() || !kind_it->is_string()) malformed("transaction kind missing");
  const std::string& kind = kind_it->get_ref<const std::string&>();

  Transaction tx;
  if (kind == to_string(TxKind::generator_reward)) {
    tx.kind = TxKind::generator_reward;
    tx.generator = as_u64(field(obj, "generator", 5), "generator");
    tx.reward = as_real(field(obj, "reward", 5), "reward");
    tx.loop_index = as_u64(field(obj, "loop", 5), "loop");
    tx.tx_id = as_u64(field(obj, "tx_id", 5), "tx_id");
  } else if (kind == to_string(TxKind::pair_observation)) {
    tx.kind = TxKind::pair_observation;
    const json& pair = field(obj, "pair", 5);
    if (!pair.is_array() || pair.size() != 2) malformed("pair must have two members");
    tx.pair = RobotPair{as_u64(pair[0], "pair"), as_u64(pair[1], "pair")};
    const json& matches = field(obj, "matches", 5);
    if (!matches.is_array()) malformed("matches must be an array");
    for (const json& m : matches) {
      tx.matches.push_back(LandmarkMatch{as_u64(field(m, "landmark", 2), "landmark"),
                                         as_real(field(m, "quality", 2), "quality")});
    }
    tx.loop_index = as_u64(field(obj, "loop", 5), "loop");
    tx.tx_id = as_u64(field(obj, "tx_id", 5), "tx_id");
  } else {
    malformed("unknown transaction kind '" + kind + "'");
  }
  return tx;
}

}  // namespace

Block decode_block_record(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  Block block;
  block.avg_navigability = as_real(field(obj, "avg_navigability", 6), "avg_navigability");
  block.generator = as_u64(field(obj, "generator", 6), "generator");
  block.hash = as_digest(field(obj, "hash", 6), "hash");
  block.index = as_u64(field(obj, "index", 6), "index");
  block.prev_hash = as_digest(field(obj, "prev_hash", 6), "prev_hash");
  const json& txs = field(obj, "transactions", 6);
  if (!txs.is_array()) malformed("transactions must be an array");
  block.transactions.reserve(txs.size());
  for (const json& t : txs) block.transactions.push_back(decode_transaction(t));

  if (encode_block_record(block) != line) malformed("record is not in canonical form");
  return block;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> verify_chain(std::span<const Block> blocks) {
  Digest expected_prev{};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& block = blocks[b];
    if (block.index != b || block.prev_hash != expected_prev ||
        block.hash != compute_block_hash(block)) {
      return b;
    }
    expected_prev = block.hash;
  }
  return std::nullopt;
}

std::uint64_t pair_tx_count(std::span<const Block> blocks, RobotId i, RobotId j) {
  const RobotPair target = RobotPair::of(i, j);
  std::uint64_t count = 0;
  for (const Block& block : blocks) {
    for (const Transaction& tx : block.transactions) {
      if (tx.kind == TxKind::pair_observation && tx.pair == target) ++count;
    }
  }
  return count;
}

std::vector<std::size_t> generator_histogram(std::span<const Block> blocks, std::size_t n_robots) {
  std::vector<std::size_t> counts(n_robots, 0);
  for (const Block& block : blocks) {
    if (block.generator >= n_robots) throw IndexError("block generator outside the team");
    ++counts[block.generator];
  }
  return counts;
}

Chain::Chain(std::size_t n_robots) : n_robots_(n_robots), counts_(n_robots) {}

void Chain::validate_transaction(const Transaction& tx) const {
  switch (tx.kind) {
    case TxKind::pair_observation:
      if (tx.pair.first >= tx.pair.second || tx.pair.second >= n_robots_) {
        throw LedgerError("observation pair is not an ordered pair of team members");
      }
      if (tx.matches.empty()) throw LedgerError("observation without landmark matches");
      for (const LandmarkMatch& m : tx.matches) {
        if (!(m.quality >= 0.0 && m.quality <= 1.0)) {
          throw LedgerError("match quality outside [0, 1]");
        }
      }
      return;
    case TxKind::generator_reward:
      if (tx.generator >= n_robots_) throw LedgerError("reward for a robot outside the team");
      if (!(std::isfinite(tx.reward) && tx.reward >= 0.0)) {
        throw LedgerError("reward must be finite and non-negative");
      }
      return;
  }
  throw LedgerError("unknown transaction kind");
}

const Block& Chain::append_block(std::vector<Transaction> transactions, RobotId generator,
                                 double avg_navigability) {
  if (transactions.empty()) throw LedgerError("cannot seal an empty block");
  if (generator >= n_robots_) {
    throw LedgerError("generator " + std::to_string(generator) + " outside team of " +
                      std::to_string(n_robots_));
  }
  std::uint64_t expected = next_tx_id_;
  for (const Transaction& tx : transactions) {
    if (tx.tx_id != expected) {
      throw LedgerError("tx_id " + std::to_string(tx.tx_id) + " breaks the sequence; expected " +
                        std::to_string(expected));
    }
    validate_transaction(tx);
    ++expected;
  }

  Block block;
  block.index = blocks_.size();
  if (!blocks_.empty()) block.prev_hash = blocks_.back().hash;
  block.transactions = std::move(transactions);
  block.generator = generator;
  block.avg_navigability = avg_navigability;
  block.hash = compute_block_hash(block);

  for (const Transaction& tx : block.transactions) {
    if (tx.kind == TxKind::pair_observation) counts_.add(tx.pair);
  }
  next_tx_id_ = expected;
  blocks_.push_back(std::move(block));
  return blocks_.back();
}

std::uint64_t Chain::pair_tx_count(RobotId i, RobotId j) const { return counts_.count(i, j); }

std::vector<std::size_t> Chain::generator_histogram() const {
  return wavn::generator_histogram(blocks_, n_robots_);
}

void write_ledger(std::ostream& out, std::span<const Block> blocks) {
  for (const Block& block : blocks) out << encode_block_record(block) << '\n';
}

std::vector<Block> read_ledger(std::istream& in) {
  std::vector<Block> blocks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) throw LedgerError("blank line in ledger dump");
    blocks.push_back(decode_block_record(line));
  }
  return blocks;
}

}  // namespace wavn
