#include <doctest.h>

#include <set>

#include "wavn/domain.hpp"
#include "wavn/error.hpp"

using namespace wavn;

namespace {

std::string violated_field(const WorldConfig& cfg) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("default config is the 10-robot, 20-landmark, 200x200 world") {
  const WorldConfig cfg;
  CHECK(cfg.n_robots == 10);
  CHECK(cfg.n_landmarks == 20);
  CHECK(cfg.width == 200.0);
  CHECK(cfg.height == 200.0);
  CHECK(cfg.loops == 10);
  CHECK(cfg.block_size == 10);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation names the violated field") {
  WorldConfig cfg;
  SUBCASE("width") {
    cfg.width = 0;
    CHECK(violated_field(cfg) == "width");
  }
  SUBCASE("height") {
    cfg.height = -1;
    CHECK(violated_field(cfg) == "height");
  }
  SUBCASE("robots") {
    cfg.n_robots = 0;
    CHECK(violated_field(cfg) == "n_robots");
  }
  SUBCASE("radius") {
    cfg.sensing_radius = 0;
    CHECK(violated_field(cfg) == "sensing_radius");
  }
  SUBCASE("step") {
    cfg.step_size = -0.5;
    CHECK(violated_field(cfg) == "step_size");
  }
  SUBCASE("block size") {
    cfg.block_size = 0;
    CHECK(violated_field(cfg) == "block_size");
  }
  SUBCASE("initial stake") {
    cfg.initial_stake = 0;
    CHECK(violated_field(cfg) == "initial_stake");
  }
  SUBCASE("reward") {
    cfg.generator_reward = -0.1;
    CHECK(violated_field(cfg) == "generator_reward");
  }
  SUBCASE("NaN") {
    cfg.width = std::numeric_limits<double>::quiet_NaN();
    CHECK(violated_field(cfg) == "width");
  }
  SUBCASE("zero landmarks and zero loops are fine") {
    cfg.n_landmarks = 0;
    cfg.loops = 0;
    cfg.step_size = 0;
    cfg.generator_reward = 0;
    CHECK(violated_field(cfg).empty());
  }
}

TEST_CASE("init_world places everything in bounds with initial stakes") {
  WorldConfig cfg;
  cfg.seed = 7;
  const WorldInit init = init_world(cfg);
  REQUIRE(init.world.robots.size() == 10);
  REQUIRE(init.world.landmarks.size() == 20);
  double total = 0.0;
  for (std::size_t i = 0; i < init.world.robots.size(); ++i) {
    const RobotState& r = init.world.robots[i];
    CHECK(r.id == i);
    CHECK(r.position.x >= 0.0);
    CHECK(r.position.x <= cfg.width);
    CHECK(r.position.y >= 0.0);
    CHECK(r.position.y <= cfg.height);
    CHECK(r.stake == cfg.initial_stake);
    total += r.stake;
  }
  CHECK(total == doctest::Approx(10.0 * cfg.initial_stake));
  for (const Landmark& l : init.world.landmarks) {
    CHECK(l.position.x >= 0.0);
    CHECK(l.position.x <= cfg.width);
    CHECK(l.position.y >= 0.0);
    CHECK(l.position.y <= cfg.height);
  }
}

TEST_CASE("init_world is deterministic per seed and varies across seeds") {
  WorldConfig cfg;
  cfg.seed = 123;
  CHECK(init_world(cfg).world == init_world(cfg).world);
  WorldConfig other = cfg;
  other.seed = 124;
  CHECK_FALSE(init_world(cfg).world == init_world(other).world);
}

TEST_CASE("init_world with no landmarks") {
  WorldConfig cfg;
  cfg.n_landmarks = 0;
  const WorldInit init = init_world(cfg);
  CHECK(init.world.landmarks.empty());
  CHECK(init.world.robots.size() == cfg.n_robots);
}

TEST_CASE("init_world rejects invalid configs") {
  WorldConfig cfg;
  cfg.n_robots = 0;
  CHECK_THROWS_AS(init_world(cfg), ConfigError);
}

TEST_CASE("placement stream only: landmark positions do not depend on other streams") {
  // Robots are placed first, so changing the landmark count leaves robot
  // positions untouched.
  WorldConfig a;
  WorldConfig b = a;
  b.n_landmarks = 3;
  CHECK(init_world(a).world.robots == init_world(b).world.robots);
}

TEST_CASE("RobotPair normalizes and rejects self pairs") {
  CHECK(RobotPair::of(3, 1) == RobotPair{1, 3});
  CHECK(RobotPair::of(1, 3) == RobotPair::of(3, 1));
  CHECK_THROWS_AS(RobotPair::of(2, 2), InvalidPairError);
}

TEST_CASE("pair_index enumerates the upper triangle bijectively") {
  for (std::size_t n : {2u, 3u, 5u, 10u}) {
    std::set<std::size_t> seen;
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        CHECK(pair_index(n, RobotPair{i, j}) == expected++);
        seen.insert(pair_index(n, RobotPair{i, j}));
      }
    }
    CHECK(seen.size() == pair_count(n));
    CHECK(pair_count(n) == n * (n - 1) / 2);
  }
  CHECK(pair_count(0) == 0);
  CHECK(pair_count(1) == 0);
}

TEST_CASE("PairCounts is symmetric") {
  PairCounts counts(4);
  counts.add(RobotPair::of(2, 0), 3);
  CHECK(counts.count(0, 2) == 3);
  CHECK(counts.count(2, 0) == 3);
  CHECK(counts.count(1, 3) == 0);
  CHECK_THROWS_AS(counts.count(1, 1), InvalidPairError);
  CHECK_THROWS_AS(counts.count(1, 4), InvalidPairError);
}
