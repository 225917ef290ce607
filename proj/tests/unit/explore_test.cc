#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "swarm/explore.h"
#include "swarm/oracle.h"

namespace swarm {
namespace {

TEST(Levy, Endpoints) {
  const LevyParams p{1.5, 0.5, 20.0};
  EXPECT_DOUBLE_EQ(LevyLengthFromUniform(p, 0.0), 0.5);
  EXPECT_NEAR(LevyLengthFromUniform(p, 1.0), 20.0, 1e-12);
}

TEST(Levy, Median) {
  const LevyParams p{1.5, 0.5, 20.0};
  EXPECT_NEAR(LevyLengthFromUniform(p, 0.5), 1.4911710379658898, 1e-12);
}

TEST(Levy, MedianMatchesRejectionSampling) {
  // Pareto proposals on [l_min, inf) rejected above l_max.
  const LevyParams p{1.5, 0.5, 20.0};
  Rng rng(99);
  std::vector<double> samples;
  while (samples.size() < 200000) {
    const double l = p.l_min * std::pow(1.0 - Uniform01(rng), -1.0 / (p.alpha - 1.0));
    if (l <= p.l_max) samples.push_back(l);
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  EXPECT_NEAR(samples[samples.size() / 2], LevyLengthFromUniform(p, 0.5), 0.02);
}

TEST(Levy, RejectsBadParams) {
  EXPECT_THROW((LevyParams{1.0, 0.5, 20.0}.Validate()), std::invalid_argument);
  EXPECT_THROW((LevyParams{1.5, 2.0, 1.0}.Validate()), std::invalid_argument);
  EXPECT_THROW(LevyLengthFromUniform({1.0, 0.5, 20.0}, 0.5), std::invalid_argument);
}

TEST(Levy, SamplesInRange) {
  const LevyParams p{1.5, 0.2, 16.0};
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double l = SampleLevyLength(p, rng);
    EXPECT_GE(l, p.l_min);
    EXPECT_LE(l, p.l_max);
  }
}

TEST(BeamMi, Constant) {
  EXPECT_NEAR(MiConstant(0.05), 2.2748325097067212, 1e-12);
}

TEST(BeamMi, CertainMapCarriesNoInformation) {
  const SensorSpec spec;
  const double d[] = {0.5, 1.0, 1.5};
  for (const auto& p : {std::vector<double>{0, 0, 0}, std::vector<double>{0, 1, 0},
                        std::vector<double>{1, 1, 1}, std::vector<double>{0, 0, 1}}) {
    EXPECT_NEAR(BeamMi(p, d, spec), 0.0, 1e-3);
  }
}

TEST(BeamMi, SingleCellMatchesEnumeration) {
  const SensorSpec spec;
  const double p[] = {0.5};
  const double d[] = {1.0};
  const Quadrature q = Quadrature::Extended(spec);
  EXPECT_NEAR(BeamMi(p, d, spec, q), oracle::BruteForceMi(p, d, spec, q), 1e-4);
  // Two well separated outcomes at even odds: one bit.
  EXPECT_NEAR(BeamMi(p, d, spec), 1.0, 1e-3);
}

TEST(BeamMi, UncertainCellAddsInformation) {
  const SensorSpec spec;
  const double d[] = {0.5, 1.0, 1.5};
  const double certain[] = {0, 0, 0};
  const double uncertain[] = {0, 0, 0.5};
  EXPECT_GT(BeamMi(uncertain, d, spec), BeamMi(certain, d, spec) + 0.5);
}

TEST(BeamMi, EmptyBeam) {
  EXPECT_NEAR(BeamMi({}, {}, SensorSpec{}), 0.0, 1e-3);
}

TEST(SelectBeams, AllBelowThreshold) {
  const std::vector<CandidateBeam> beams{{0, 0.0, 0.0}, {0, 0.5, 0.0}};
  EXPECT_TRUE(SelectBeams(beams, 0.01, 0.1).empty());
}

TEST(SelectBeams, ThresholdFilter) {
  const std::vector<CandidateBeam> beams{{0, 0.0, 0.5}, {0, 0.5, 0.002}, {0, 1.0, 0.3}};
  EXPECT_EQ(SelectBeams(beams, 0.01, 0.1), (std::vector<std::size_t>{0, 2}));
}

TEST(SelectBeams, DuplicateAnglesKeepOne) {
  const std::vector<CandidateBeam> beams{{0, 0.3, 0.2}, {0, 0.3, 0.4}, {1, 0.3, 0.1}};
  EXPECT_EQ(SelectBeams(beams, 0.01, 0.1), (std::vector<std::size_t>{1, 2}));
}

OccupancyGrid CertainMap(int w, int h) {
  OccupancyGrid map(w, h, 0.1, {0.0, 0.0}, 1e-300);
  for (int c = 0; c < map.size(); ++c) map.SetProbability(c, 0.0);
  return map;
}

TEST(TrajectoryMi, CertainMapIsZero) {
  const OccupancyGrid map = CertainMap(60, 60);
  EXPECT_EQ(TrajectoryMi(map, {3.0, 3.0, 0.0}, 0.0, 0.4, 10.0, SensorSpec{}, {}), 0.0);
}

TEST(TrajectoryMi, UnexploredSideIsMoreInformative) {
  // Left half mapped free, right half unexplored.
  OccupancyGrid map(100, 60, 0.1, {0.0, 0.0});
  for (int y = 0; y < 60; ++y) {
    for (int x = 0; x < 50; ++x) map.SetProbability(map.Index(x, y), 0.001);
  }
  const Pose2 pose{5.0, 3.0, 0.0};
  const SensorSpec spec;
  const double east = TrajectoryMi(map, pose, 0.0, 0.4, 5.0, spec, {});
  const double west = TrajectoryMi(map, pose, kPi, 0.4, 5.0, spec, {});
  EXPECT_GT(east, west);
}

TEST(TrajectoryMi, ZeroDurationScoresStartOnly) {
  const OccupancyGrid map(60, 60, 0.1, {0.0, 0.0});
  const SensorSpec spec;
  const PlannerOptions options;
  const Pose2 pose{3.0, 3.0, 0.0};
  const double start = TrajectoryMi(map, pose, 0.0, 0.4, 0.0, spec, options);
  EXPECT_GT(start, 0.0);
  EXPECT_EQ(start, TrajectoryMi(map, pose, 0.0, 0.4, 1e-6, spec, options));
  EXPECT_GT(TrajectoryMi(map, pose, 0.0, 0.4, 10.0, spec, options), start);
}

TEST(TrajectoryMi, StopsAtKnownObstacle) {
  OccupancyGrid map(100, 60, 0.1, {0.0, 0.0});
  for (int y = 0; y < 60; ++y) map.SetProbability(map.Index(32, y), 0.99);
  const Pose2 pose{3.0, 3.0, 0.0};
  const SensorSpec spec;
  const double blocked = TrajectoryMi(map, pose, 0.0, 0.4, 20.0, spec, {});
  const double open = TrajectoryMi(map, pose, kPi / 2, 0.4, 20.0, spec, {});
  EXPECT_LT(blocked, open);
}

TEST(Heading, Cost) {
  constexpr double phi = kPi / 72;
  EXPECT_NEAR(phi, 0.04363323129985824, 1e-15);
  EXPECT_NEAR(HeadingCost(0.0, phi), phi, 1e-15);
  EXPECT_NEAR(HeadingCost(kPi, phi), 2.0 + phi, 1e-15);
  EXPECT_NEAR(HeadingCost(-kPi / 2, phi), HeadingCost(kPi / 2, phi), 1e-15);
}

TEST(Heading, ScoreArithmetic) {
  constexpr double phi = kPi / 72;
  const std::vector<CandidateScore> c{{kPi, 1.0, HeadingCost(kPi, phi)},
                                      {0.0, 0.6, HeadingCost(0.0, phi)}};
  EXPECT_NEAR(c[0].mi / c[0].cost, 0.48932459341735574, 1e-12);
  EXPECT_NEAR(c[1].mi / c[1].cost, 13.750987083139757, 1e-9);
  EXPECT_EQ(BestCandidate(c, 0.0), 1u);
}

TEST(Heading, EqualScoresKeepCurrentHeading) {
  const auto headings = CandidateHeadings(0.7, 8);
  std::vector<CandidateScore> c;
  for (double h : headings) c.push_back({h, 1.0, 1.0});
  EXPECT_EQ(BestCandidate(c, 0.7), 0u);
}

TEST(Heading, MaskedCandidatesSkipped) {
  constexpr double phi = kPi / 72;
  const std::vector<CandidateScore> c{{0.0, 1.0, HeadingCost(0.0, phi)},
                                      {kPi, 1.0, HeadingCost(kPi, phi)}};
  const std::uint8_t allowed[] = {0, 1};
  EXPECT_EQ(BestCandidate(c, 0.0, allowed), 1u);
  const std::uint8_t none[] = {0, 0};
  EXPECT_EQ(BestCandidate(c, 0.0, none), 0u);
}

TEST(Heading, CandidatesEvenlySpaced) {
  const auto h = CandidateHeadings(0.0, 8);
  ASSERT_EQ(h.size(), 8u);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::cos(h[j]), std::cos(2 * kPi * j / 8), 1e-12);
  EXPECT_THROW(CandidateHeadings(0.0, 0), std::invalid_argument);
}

TEST(Heading, UniformMapKeepsHeading) {
  const OccupancyGrid map = CertainMap(80, 80);
  Rng rng(3);
  const HeadingDecision d =
      ChooseHeading(map, {4.0, 4.0, 1.0}, 1.0, 0.4, {1.5, 0.2, 8.0}, SensorSpec{}, {}, rng);
  EXPECT_NEAR(d.heading, 1.0, 1e-12);
  EXPECT_EQ(d.per_candidate.size(), 8u);
  EXPECT_GE(d.step_length, 0.2);
  EXPECT_NEAR(d.duration, d.step_length / 0.4, 1e-12);
}

TEST(Heading, PrefersUnexploredAtEqualCost) {
  OccupancyGrid map(100, 60, 0.1, {0.0, 0.0});
  for (int y = 0; y < 60; ++y) {
    for (int x = 0; x < 50; ++x) map.SetProbability(map.Index(x, y), 0.001);
  }
  Rng rng(8);
  const HeadingDecision d = ChooseHeading(map, {4.0, 3.0, kPi / 2}, kPi / 2, 0.4,
                                          {1.5, 3.0, 8.0}, SensorSpec{}, {}, rng);
  // Candidates 2 (west) and 6 (east) both turn by a right angle.
  EXPECT_NEAR(d.per_candidate[2].cost, d.per_candidate[6].cost, 1e-12);
  EXPECT_GT(d.per_candidate[6].mi, d.per_candidate[2].mi);
  EXPECT_GT(std::cos(d.heading), -1e-9);
}

TEST(SlwHeading, RangeAndSeeds) {
  Rng a(1);
  Rng b(2);
  bool differ = false;
  for (int i = 0; i < 1000; ++i) {
    const double h = SlwHeading(a);
    EXPECT_GE(h, -kPi);
    EXPECT_LT(h, kPi);
    differ = differ || h != SlwHeading(b);
  }
  EXPECT_TRUE(differ);
}

}  // namespace
}  // namespace swarm
