#include "wavn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavn/error.hpp"
#include "wavn/navigability.hpp"

namespace wavn {

void DegradationScenario::validate(const WorldConfig& config) const {
  if (pair.first >= pair.second || pair.second >= config.n_robots) {
    throw ConfigError("degrade_pair", "must name two distinct robots of the team");
  }
  if (start_loop < 1 || start_loop > end_loop || end_loop > config.loops) {
    throw ConfigError("degrade_loops", "window must satisfy 1 <= start <= end <= loops");
  }
  if (!(factor >= 0.0 && factor < 1.0)) {
    throw ConfigError("degrade_factor", "must lie in [0, 1)");
  }
}

void CommonLandmarkStats::record(std::size_t count) noexcept {
  max_count = max_count ? std::max(*max_count, count) : count;
  min_count = min_count ? std::min(*min_count, count) : count;
}

double ExperimentState::total_stake() const noexcept {
  double total = 0.0;
  for (const RobotState& r : world.robots) total += r.stake;
  return total;
}

namespace {

std::vector<Vec2> positions_of(const World& world) {
  std::vector<Vec2> out;
  out.reserve(world.robots.size());
  for (const RobotState& r : world.robots) out.push_back(r.position);
  return out;
}

}  // namespace

ExperimentState make_experiment(const WorldConfig& config,
                                std::optional<DegradationScenario> scenario) {
  config.validate();
  if (scenario) scenario->validate(config);

  WorldInit init = init_world(config);
  ExperimentState state{
      .config = config,
      .scenario = scenario,
      .world = std::move(init.world),
      .chain = Chain(config.n_robots),
      .pending = {},
      .loop_index = 0,
      .streams = std::move(init.streams),
      .snapshot = std::nullopt,
      .series = {},
      .trajectory = {},
      .common_stats = {},
  };
  state.trajectory.push_back(positions_of(state.world));
  return state;
}

void step_movement(ExperimentState& state) {
  const WorldConfig& cfg = state.config;
  if (state.loop_index >= cfg.loops) throw std::logic_error("all configured loops already ran");

  RandomStream& rng = state.streams.movement;
  for (RobotState& robot : state.world.robots) {
    const double dx = rng.uniform(-cfg.step_size, cfg.step_size);
    const double dy = rng.uniform(-cfg.step_size, cfg.step_size);
    robot.position.x = std::clamp(robot.position.x + dx, 0.0, cfg.width);
    robot.position.y = std::clamp(robot.position.y + dy, 0.0, cfg.height);
  }
  ++state.loop_index;
  state.trajectory.push_back(positions_of(state.world));
}

VisibilitySnapshot compute_visibility(ExperimentState& state) {
  const std::size_t n = state.world.robots.size();
  const std::size_t m = state.world.landmarks.size();
  const std::size_t loop = state.loop_index;
  VisibilitySnapshot snapshot(n, m);

  for (const RobotState& robot : state.world.robots) {
    for (const Landmark& landmark : state.world.landmarks) {
      if (distance(robot.position, landmark.position) <= state.config.sensing_radius) {
        snapshot.recognize(robot.id, landmark.id);
      }
    }
  }

  RandomStream& rng = state.streams.quality;
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) {
      const RobotPair pair{i, j};
      const bool degraded = state.scenario && state.scenario->applies(pair, loop);
      std::size_t common = 0;
      for (LandmarkId k = 0; k < m; ++k) {
        if (!(snapshot.recognizes_unchecked(i, k) && snapshot.recognizes_unchecked(j, k))) {
          continue;
        }
        double omega = rng.uniform01();
        if (degraded) omega *= state.scenario->factor;
        snapshot.set_quality(i, j, k, omega);
        ++common;
      }
      state.common_stats.record(common);
    }
  }
  return snapshot;
}

std::size_t emit_transactions(ExperimentState& state, const VisibilitySnapshot& snapshot) {
  const std::size_t n = snapshot.robot_count();
  std::size_t emitted = 0;
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) {
      std::vector<LandmarkMatch> matches;
      for (LandmarkId k : common_landmarks(snapshot, i, j)) {
        matches.push_back(LandmarkMatch{k, snapshot.quality(i, j, k)});
      }
      if (matches.empty()) continue;
      // tx_id is a placeholder until the batch is sealed.
      state.pending.push_back(
          Transaction::observation(0, RobotPair{i, j}, std::move(matches), state.loop_index));
      ++emitted;
    }
  }
  return emitted;
}

std::vector<std::size_t> maybe_seal_blocks(ExperimentState& state, SealMode mode) {
  std::vector<std::size_t> sealed;
  const std::size_t block_size = state.config.block_size;
  auto ready = [&] {
    return state.pending.size() >= block_size ||
           (mode == SealMode::drain && !state.pending.empty());
  };
  if (ready() && !state.snapshot) throw std::logic_error("sealing requires a visibility snapshot");

  while (ready()) {
    const std::size_t n = state.world.robots.size();
    const StakeTable stakes = state.stakes();

    // Election sees the chain as it stood before this block.
    double avg = 0.0;
    std::vector<double> weights(n, 0.0);
    if (n >= 2) {
      const AlphaMatrix alpha = AlphaMatrix::from_counts(state.chain.pair_counts());
      const NavigabilityMatrix matrix = navigability_matrix(stakes, *state.snapshot, alpha);
      avg = average_navigability(matrix);
      weights = matrix.row_sums();
    }
    const Election election = elect_generator(weights, stakes, state.streams.election);

    const std::size_t take = std::min(block_size, state.pending.size());
    std::vector<Transaction> batch;
    batch.reserve(take + 1);
    std::uint64_t id = state.chain.next_tx_id();
    for (std::size_t t = 0; t < take; ++t) {
      Transaction tx = std::move(state.pending.front());
      state.pending.pop_front();
      tx.tx_id = id++;
      batch.push_back(std::move(tx));
    }
    batch.push_back(Transaction::generator_reward(id, election.generator,
                                                  state.config.generator_reward, state.loop_index));

    const Block& block = state.chain.append_block(std::move(batch), election.generator, avg);
    state.world.robots[election.generator].stake += state.config.generator_reward;
    state.series.push_back(SeriesPoint{block.index, avg});
    sealed.push_back(block.index);
  }
  return sealed;
}

void run_loop(ExperimentState& state) {
  step_movement(state);
  VisibilitySnapshot snapshot = compute_visibility(state);
  emit_transactions(state, snapshot);
  state.snapshot = std::move(snapshot);
  maybe_seal_blocks(state, SealMode::threshold);
}

ExperimentState run_experiment(const WorldConfig& config,
                               std::optional<DegradationScenario> scenario) {
  ExperimentState state = make_experiment(config, scenario);
  for (std::size_t loop = 0; loop < config.loops; ++loop) run_loop(state);
  maybe_seal_blocks(state, SealMode::drain);
  return state;
}

RobotPair highest_traffic_pair(const Chain& chain) {
  const std::size_t n = chain.robot_count();
  if (n < 2) throw InvalidPairError("traffic ranking needs at least two robots");
  RobotPair best{0, 1};
  std::uint64_t best_count = chain.pair_tx_count(0, 1);
  for (RobotId i = 0; i < n; ++i) {
    for (RobotId j = i + 1; j < n; ++j) {
      const std::uint64_t c = chain.pair_tx_count(i, j);
      if (c > best_count) {
        best = RobotPair{i, j};
        best_count = c;
      }
    }
  }
  return best;
}

}  // namespace wavn
