#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "swarm/tda.h"

namespace swarm {
namespace {

using Interval = PersistenceInterval;

bool Has(const Barcode& b, int dim, int birth, int death) {
  return std::any_of(b.intervals.begin(), b.intervals.end(), [&](const Interval& iv) {
    return iv.dim == dim && iv.birth == birth && iv.death == death;
  });
}

Barcode Persist(const PixelGrid& px) { return ComputePersistence(CubicalComplex(px)); }

TEST(CubicalComplex, SinglePixel) {
  const CubicalComplex k({1, 1, {7}});
  EXPECT_EQ(k.num_vertices(), 1);
  EXPECT_EQ(k.num_edges(), 0);
  EXPECT_EQ(k.num_squares(), 0);
}

TEST(CubicalComplex, TwoByTwoCounts) {
  const CubicalComplex k({2, 2, {0, 0, 0, 0}});
  EXPECT_EQ(k.num_vertices(), 4);
  EXPECT_EQ(k.num_edges(), 4);
  EXPECT_EQ(k.num_squares(), 1);
  for (const auto& c : k.FiltrationOrder()) EXPECT_EQ(c.value, 0);
}

TEST(CubicalComplex, SquareTakesMaxVertex) {
  const CubicalComplex k({2, 2, {0, 0, 0, 200}});
  EXPECT_EQ(k.SquareValue(0), 200);
  EXPECT_EQ(k.EdgeValue(0), 0);  // bottom edge
}

TEST(CubicalComplex, FacesPrecedeCofaces) {
  const CubicalComplex k({3, 2, {5, 1, 9, 3, 3, 0}});
  const auto order = k.FiltrationOrder();
  std::vector<int> vpos(k.num_vertices()), epos(k.num_edges());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].dim == 0) vpos[order[i].index] = static_cast<int>(i);
    if (order[i].dim == 1) epos[order[i].index] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].dim == 1) {
      const auto [a, b] = k.EdgeVertices(order[i].index);
      EXPECT_LT(vpos[a], static_cast<int>(i));
      EXPECT_LT(vpos[b], static_cast<int>(i));
    } else if (order[i].dim == 2) {
      for (int e : k.SquareEdges(order[i].index)) EXPECT_LT(epos[e], static_cast<int>(i));
    }
  }
}

TEST(Persistence, SingleVertex) {
  const Barcode b = Persist({1, 1, {42}});
  ASSERT_EQ(b.intervals.size(), 1u);
  EXPECT_TRUE(Has(b, 0, 42, Interval::kInfinite));
}

TEST(Persistence, RingAroundBrightCenter) {
  const Barcode b = Persist({3, 3, {25, 25, 25, 25, 230, 25, 25, 25, 25}});
  EXPECT_TRUE(Has(b, 1, 25, 230));
  EXPECT_TRUE(Has(b, 0, 25, Interval::kInfinite));
  EXPECT_EQ(b.Count(1), 1);
  EXPECT_EQ(b.Count(0), 1);
  EXPECT_EQ(BettiOracle({3, 3, {25, 25, 25, 25, 230, 25, 25, 25, 25}}, 100),
            (std::pair<int, int>{1, 1}));
}

TEST(Persistence, PathMergesComponents) {
  const Barcode b = Persist({5, 1, {10, 90, 90, 90, 10}});
  ASSERT_EQ(b.intervals.size(), 2u);
  EXPECT_TRUE(Has(b, 0, 10, Interval::kInfinite));
  EXPECT_TRUE(Has(b, 0, 10, 90));
}

TEST(BettiOracle, Basics) {
  const PixelGrid px{4, 3, std::vector<std::uint8_t>(12, 100)};
  EXPECT_EQ(BettiOracle(px, 50), (std::pair<int, int>{0, 0}));
  EXPECT_EQ(BettiOracle(px, 100), (std::pair<int, int>{1, 0}));
  const PixelGrid ring{3, 3, {0, 0, 0, 0, 255, 0, 0, 0, 0}};
  EXPECT_EQ(BettiOracle(ring, 0), (std::pair<int, int>{1, 1}));
}

TEST(SelectThreshold, LargestTerminatingDeath) {
  Barcode b;
  b.intervals = {{0, 0, Interval::kInfinite}, {0, 10, 90}, {1, 30, 204}, {0, 20, 150}};
  EXPECT_EQ(SelectThreshold(b), 204);
  EXPECT_NEAR(204 / 255.0, 0.8, 1e-15);
}

TEST(SelectThreshold, OnlyInfinite) {
  Barcode b;
  b.intervals = {{0, 0, Interval::kInfinite}, {1, 25, Interval::kInfinite}};
  EXPECT_EQ(SelectThreshold(b), 0);
}

TEST(SelectThreshold, DeathsAbovePhiMaxArePersistent) {
  Barcode b;
  b.intervals = {{0, 0, Interval::kInfinite}, {1, 26, 255}, {0, 26, 80}};
  EXPECT_EQ(SelectThreshold(b, 250), 80);
  EXPECT_EQ(SelectThreshold(b, 255), 255);
}

OccupancyGrid Synthetic() {
  // 20x20 free space with two 0.9 blocks and a 0.9 border.
  OccupancyGrid g(20, 20, 0.1, {});
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      const bool wall = x == 0 || y == 0 || x == 19 || y == 19;
      const bool block = (x >= 4 && x < 8 && y >= 4 && y < 8) || (x >= 12 && x < 15 && y >= 10 && y < 16);
      g.SetProbability(g.Index(x, y), wall || block ? 0.9 : 0.1);
    }
  }
  return g;
}

TEST(ThresholdMap, CleanMapMatchesHalfCut) {
  const OccupancyGrid g = Synthetic();
  const ThresholdResult r = ThresholdMap(g, Persist(ToPixels(g)));
  EXPECT_LE(r.threshold, 230);
  for (int c = 0; c < g.size(); ++c) {
    EXPECT_EQ(r.map.occupied[c] != 0, g.prob(c) >= 0.5) << c;
  }
}

TEST(ThresholdMap, AllUnexploredIsOccupied) {
  const OccupancyGrid g(6, 5, 0.1, {});
  const ThresholdResult r = ThresholdMap(g, Persist(ToPixels(g)));
  for (auto v : r.map.occupied) EXPECT_EQ(v, 1);
}

TEST(ThresholdMap, AllFloorIsFree) {
  OccupancyGrid g(6, 5, 0.1, {});
  for (int c = 0; c < g.size(); ++c) g.SetProbability(c, 0.0);
  const ThresholdResult r = ThresholdMap(g, Persist(ToPixels(g)));
  EXPECT_EQ(r.threshold, 0);
  for (auto v : r.map.occupied) EXPECT_EQ(v, 0);
}

TEST(ThresholdMap, OccupiedAtOrAboveThreshold) {
  // Free 0.1 field with one 0.8 (204) blob: the blob's hole dies at 204.
  OccupancyGrid g(9, 9, 0.1, {});
  for (int c = 0; c < g.size(); ++c) g.SetProbability(c, 0.1);
  g.SetProbability(g.Index(4, 4), 0.8);
  const ThresholdResult r = ThresholdMap(g, Persist(ToPixels(g)));
  EXPECT_EQ(r.threshold, 204);
  EXPECT_EQ(r.free_cut, 203);
  EXPECT_EQ(r.map.occupied[g.Index(4, 4)], 1);
  EXPECT_EQ(r.map.occupied[g.Index(0, 0)], 0);
}

TEST(Export, BarcodeCsv) {
  Barcode b;
  b.intervals = {{0, 10, Interval::kInfinite}, {1, 25, 230}};
  std::ostringstream out;
  WriteBarcodeCsv(out, b);
  EXPECT_EQ(out.str(), "dim,birth,death\r\n0,10,-1\r\n1,25,230\r\n");
}

TEST(Export, Perseus) {
  std::ostringstream out;
  WritePerseus(out, {2, 2, {1, 2, 3, 4}});
  EXPECT_EQ(out.str(), "2\n2\n2\n1\n2\n3\n4\n");
}

}  // namespace
}  // namespace swarm
