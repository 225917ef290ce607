#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"
#include "swarm/sim.h"

namespace swarm {
namespace {

TEST(GridProperty, EntropyBounds) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    OccupancyGrid g(testing::UniformInt(rng, 1, 20), testing::UniformInt(rng, 1, 20), 0.1, {});
    int explored = 0;
    for (int c = 0; c < g.size(); ++c) {
      if (Uniform01(rng) < 0.6) {
        g.SetProbability(c, Uniform01(rng));
        ++explored;
      }
    }
    const double h = MapEntropy(g);
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, explored + 1e-12);
  }
}

TEST(GridProperty, PixelRoundTrip) {
  Rng rng(32);
  for (int i = 0; i < 100000; ++i) {
    const double p = Uniform01(rng);
    ASSERT_LE(std::abs(ProbabilityToIntensity(p) / 255.0 - p), 1.0 / 510 + 1e-15);
  }
}

TEST(GridProperty, MapErrorZeroOnlyOnExactMatch) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::UniformInt(rng, 1, 30);
    OccupancyGrid g(n, 1, 1.0, {}, 1e-300);
    BinaryGrid truth{n, 1, std::vector<std::uint8_t>(n)};
    for (int c = 0; c < n; ++c) {
      truth.occupied[c] = Uniform01(rng) < 0.5;
      g.mutable_probabilities()[c] = truth.occupied[c] ? 1.0 : 0.0;
    }
    ASSERT_EQ(MapErrorPercent(g, truth), 0.0);
    const int c = testing::UniformInt(rng, 0, n - 1);
    g.SetProbability(c, 0.5);
    ASSERT_GT(MapErrorPercent(g, truth), 0.0);
  }
}

// Runs a scenario step by step, checking per-step invariants.
void CheckRun(const ScenarioConfig& config) {
  const WorldMap world = ResolveWorld(config.world, config.resolution);
  Simulator sim(config, world);
  double coverage = 0.0;
  for (int k = 0; k < sim.total_steps(); ++k) {
    sim.Step();
    for (const RobotState& r : sim.robots()) {
      const auto cell = world.CellAt({r.pose.x, r.pose.y});
      ASSERT_TRUE(cell) << "robot left the world at step " << k;
      ASSERT_FALSE(world.occupied(*cell)) << "robot inside an obstacle at step " << k;
      ASSERT_GE(r.remaining_step, -r.speed * config.dt - 1e-12);
    }
    const MetricsRecord m = sim.Metrics();
    ASSERT_GE(m.coverage, coverage);
    coverage = m.coverage;
  }
}

TEST(SimProperty, InvariantsHoldIclw) {
  for (std::uint64_t seed : {1, 2, 3}) {
    ScenarioConfig c;
    c.duration = 40.0;
    c.seed = seed;
    CheckRun(c);
  }
}

TEST(SimProperty, InvariantsHoldSlwWithNoise) {
  for (std::uint64_t seed : {4, 5}) {
    ScenarioConfig c;
    c.mode = WalkMode::kSlw;
    c.pose_noise = 0.5;
    c.duration = 40.0;
    c.seed = seed;
    CheckRun(c);
  }
}

TEST(SimProperty, TransitCellsEndUpFree) {
  // Two robots start facing each other, so each sees the other as an
  // obstacle. Cells a map never observed hold no estimate and are skipped.
  const WorldMap world = BuiltinWorld("empty");
  for (std::uint64_t seed : {1, 2, 3}) {
    ScenarioConfig c;
    c.world = "builtin:empty";
    c.n_robots = 2;
    c.seed = seed;
    c.initial_poses = {{6.0, 8.0, 0.0}, {10.0, 8.0, kPi}};
    c.duration = 120.0;
    Simulator sim(c, world);
    for (int k = 0; k < sim.total_steps(); ++k) sim.Step();
    for (const OccupancyGrid& map : sim.maps()) {
      double error = 0.0;
      int transit = 0;
      for (int cell = 0; cell < map.size(); ++cell) {
        if (!sim.visited()[cell] || !map.explored(cell)) continue;
        ++transit;
        error += map.prob(cell);
      }
      ASSERT_GT(transit, 100);
      EXPECT_LT(100.0 * error / transit, 20.0) << "seed " << seed;
    }
  }
}

}  // namespace
}  // namespace swarm
