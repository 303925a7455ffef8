#pragma once

#include <cstddef>
#include <cstring>
#include <random>
#include <vector>

#include "wavn/ledger.hpp"

namespace wavn::testing {

/// Chain of `n_blocks` blocks over `n_robots`, each holding `per_block`
/// random observations plus one reward, built through Chain::append_block.
inline Chain random_chain(std::mt19937_64& rng, std::size_t n_robots, std::size_t n_blocks,
                          std::size_t per_block = 10) {
  Chain chain(n_robots);
  std::uniform_int_distribution<std::size_t> robot(0, n_robots - 1);
  std::uniform_int_distribution<std::size_t> landmark(0, 19);
  std::uniform_int_distribution<std::size_t> match_count(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::vector<Transaction> txs;
    std::uint64_t id = chain.next_tx_id();
    for (std::size_t t = 0; t < per_block; ++t) {
      std::size_t i = robot(rng), j = robot(rng);
      while (j == i) j = robot(rng);
      std::vector<LandmarkMatch> matches(match_count(rng));
      for (auto& m : matches) m = LandmarkMatch{landmark(rng), unit(rng)};
      txs.push_back(Transaction::observation(id++, RobotPair::of(i, j), std::move(matches), b + 1));
    }
    const std::size_t generator = robot(rng);
    txs.push_back(Transaction::generator_reward(id, generator, 0.1, b + 1));
    chain.append_block(std::move(txs), generator, unit(rng));
  }
  return chain;
}

/// Flips one uniformly chosen bit among the stored fields of `block`.
inline void flip_random_bit(Block& block, std::mt19937_64& rng) {
  struct Region {
    unsigned char* data;
    std::size_t bytes;
  };
  std::vector<Region> regions;
  auto add = [&](auto& field) {
    regions.push_back({reinterpret_cast<unsigned char*>(&field), sizeof(field)});
  };
  add(block.index);
  add(block.prev_hash);
  add(block.generator);
  add(block.avg_navigability);
  add(block.hash);
  for (Transaction& tx : block.transactions) {
    add(tx.tx_id);
    add(tx.loop_index);
    if (tx.kind == TxKind::pair_observation) {
      add(tx.pair.first);
      add(tx.pair.second);
      for (LandmarkMatch& m : tx.matches) {
        add(m.landmark);
        add(m.quality);
      }
    } else {
      add(tx.generator);
      add(tx.reward);
    }
  }
  std::size_t total_bits = 0;
  for (const Region& r : regions) total_bits += r.bytes * 8;
  std::size_t bit = std::uniform_int_distribution<std::size_t>(0, total_bits - 1)(rng);
  for (const Region& r : regions) {
    if (bit < r.bytes * 8) {
      r.data[bit / 8] ^= static_cast<unsigned char>(1u << (bit % 8));
      return;
    }
    bit -= r.bytes * 8;
  }
}

}  // namespace wavn::testing
