#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "generators.h"
#include "swarm/explore.h"
#include "swarm/oracle.h"
#include "swarm/sensor.h"

namespace swarm {
namespace {

using testing::RandomProbs;
using testing::UniformInt;

TEST(SensorProperty, MixtureWeightsSumToOne) {
  Rng rng(11);
  const SensorSpec spec;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = UniformInt(rng, 0, 40);
    const std::vector<double> p = RandomProbs(rng, n);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = (i + 0.5) * spec.s_max / std::max(n, 1);
    const RangeMarginal m(p, d, spec);
    const double sum = std::accumulate(m.weights().begin(), m.weights().end(), 0.0);
    ASSERT_NEAR(sum, 1.0, 1e-12);
    // Trapezoid integral of the density.
    const Quadrature q = Quadrature::Extended(spec);
    double integral = 0.0;
    const int steps = static_cast<int>(std::ceil((q.z_hi - q.z_lo) / q.step));
    const double h = (q.z_hi - q.z_lo) / steps;
    for (int k = 0; k <= steps; ++k) {
      integral += (k == 0 || k == steps ? 0.5 : 1.0) * m.Density(q.z_lo + k * h);
    }
    ASSERT_NEAR(integral * h, 1.0, 1e-3);
  }
}

TEST(SensorProperty, TracesAreOrderedAndConnected) {
  Rng rng(12);
  const GridGeometry g{50, 40, 0.1, {-1.0, 2.0}};
  SensorSpec spec;
  for (int trial = 0; trial < 2000; ++trial) {
    const Pose2 pose{-1.0 + 5.0 * Uniform01(rng), 2.0 + 4.0 * Uniform01(rng),
                     -kPi + 2 * kPi * Uniform01(rng)};
    const BeamTrace t = CastBeam(g, pose, spec.BeamAngle(UniformInt(rng, 0, 18)), spec);
    ASSERT_FALSE(t.cells.empty());
    EXPECT_EQ(t.cells[0].cell, *OccupancyGrid(50, 40, 0.1, {-1.0, 2.0}).CellAt({pose.x, pose.y}));
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      ASSERT_LE(t.cells[i].s, spec.s_max + spec.sigma);
      if (i == 0) continue;
      ASSERT_GT(t.cells[i].s, t.cells[i - 1].s);
      const int a = t.cells[i - 1].cell;
      const int b = t.cells[i].cell;
      ASSERT_LE(std::abs(a % 50 - b % 50), 1);
      ASSERT_LE(std::abs(a / 50 - b / 50), 1);
      ASSERT_NE(a, b);
    }
  }
}

TEST(SensorProperty, HitDistanceWithinRange) {
  Rng rng(13);
  BinaryGrid truth{30, 30, std::vector<std::uint8_t>(900, 0)};
  for (auto& v : truth.occupied) v = Uniform01(rng) < 0.1;
  const GridGeometry g{30, 30, 0.1, {}};
  const SensorSpec spec;
  for (int trial = 0; trial < 2000; ++trial) {
    const Pose2 pose{3.0 * Uniform01(rng), 3.0 * Uniform01(rng), 2 * kPi * Uniform01(rng)};
    const BeamTrace t = CastBeam(g, truth, pose, 0.0, spec);
    if (t.hit_distance) {
      ASSERT_LE(*t.hit_distance, spec.s_max);
      ASSERT_GE(*t.hit_distance, 0.0);
      ASSERT_TRUE(truth.occupied[t.cells.back().cell]);
    }
    for (std::size_t i = 0; i + 1 < t.cells.size(); ++i) {
      ASSERT_FALSE(truth.occupied[t.cells[i].cell]);
    }
  }
}

TEST(SensorProperty, FactorsWithinModelRange) {
  Rng rng(14);
  const GridGeometry g{40, 40, 0.1, {}};
  const SensorSpec spec;
  const InverseModelParams params;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RangeReading> scan;
    for (int b = 0; b < spec.n_beams; ++b) {
      scan.push_back({spec.BeamAngle(b), (spec.s_max + 3 * spec.sigma) * Uniform01(rng)});
    }
    const Pose2 pose{0.5 + 3.0 * Uniform01(rng), 0.5 + 3.0 * Uniform01(rng), 0.0};
    for (const CellFactor& f : ComputeUpdateFactors(g, pose, scan, spec, params)) {
      ASSERT_GE(f.u, params.p_f);
      ASSERT_LE(f.u, params.p_hit);
    }
  }
}

TEST(ExploreProperty, LevyWithinBounds) {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const LevyParams p{1.05 + 1.9 * Uniform01(rng), 0.1 + Uniform01(rng), 0.0};
    LevyParams q = p;
    q.l_max = q.l_min * (1.5 + 50 * Uniform01(rng));
    for (int i = 0; i < 200; ++i) {
      const double l = SampleLevyLength(q, rng);
      ASSERT_GE(l, q.l_min);
      ASSERT_LE(l, q.l_max);
    }
    // The inverse CDF is monotone.
    ASSERT_LE(LevyLengthFromUniform(q, 0.3), LevyLengthFromUniform(q, 0.7));
  }
}

TEST(ExploreProperty, MiMatchesEnumeration) {
  Rng rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    SensorSpec spec;
    spec.sigma = 0.02 + 0.18 * Uniform01(rng);
    const int n = UniformInt(rng, 0, 6);
    const std::vector<double> p = RandomProbs(rng, n);
    std::vector<double> d(n);
    double s = 0.0;
    for (double& v : d) v = (s += 0.05 + 0.5 * Uniform01(rng));
    const Quadrature q = Quadrature::Extended(spec);
    ASSERT_NEAR(BeamMi(p, d, spec, q), oracle::BruteForceMi(p, d, spec, q), 1e-4);
  }
}

TEST(ExploreProperty, MiBounds) {
  // 0 <= MI <= H(cells along the beam).
  Rng rng(17);
  const SensorSpec spec;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = UniformInt(rng, 1, 30);
    const std::vector<double> p = RandomProbs(rng, n);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = (i + 0.5) * 0.066;
    double h = 0.0;
    for (double v : p) h += BinaryEntropy(v);
    const double mi = BeamMi(p, d, spec);
    ASSERT_GE(mi, -1e-3);
    ASSERT_LE(mi, h + 1e-3);
  }
}

double KolmogorovPValue(double d, int n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(p, 0.0, 1.0);
}

TEST(ExploreProperty, SlwHeadingIsUniform) {
  Rng rng(18);
  const int n = 1000000;
  std::vector<double> h(n);
  double sum = 0.0;
  for (double& v : h) sum += (v = SlwHeading(rng));
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  std::sort(h.begin(), h.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (h[i] + kPi) / (2 * kPi);
    d = std::max({d, (i + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  EXPECT_GT(KolmogorovPValue(d, n), 0.01);
}

}  // namespace
}  // namespace swarm
