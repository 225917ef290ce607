#include <algorithm>
#include <tuple>

#include <gtest/gtest.h>

#include "generators.h"
#include "swarm/tda.h"

namespace swarm {
namespace {

using testing::RandomPixels;

// V - E + F of the sublevel complex.
int EulerCharacteristic(const CubicalComplex& k, int threshold) {
  int chi = 0;
  for (const auto& c : k.FiltrationOrder()) {
    if (c.value > threshold) break;
    chi += c.dim == 1 ? -1 : 1;
  }
  return chi;
}

TEST(TdaProperty, BarcodeBettiMatchesOracle) {
  Rng rng(101);
  for (int trial = 0; trial < 250; ++trial) {
    const PixelGrid px = RandomPixels(rng, 16, trial % 2 ? 256 : 4);
    const Barcode b = ComputePersistence(CubicalComplex(px));
    for (int t = 0; t < 256; ++t) {
      ASSERT_EQ(b.BettiAt(t), BettiOracle(px, t)) << "trial " << trial << " threshold " << t;
    }
  }
}

TEST(TdaProperty, EulerConsistency) {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const PixelGrid px = RandomPixels(rng, 12, 8);
    const CubicalComplex k(px);
    const Barcode b = ComputePersistence(k);
    for (int t = 0; t < 256; t += 5) {
      const auto [b0, b1] = b.BettiAt(t);
      ASSERT_EQ(b0 - b1, EulerCharacteristic(k, t));
    }
  }
}

TEST(TdaProperty, IntervalCountBoundedByCubes) {
  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const CubicalComplex k(RandomPixels(rng, 16));
    const Barcode b = ComputePersistence(k);
    EXPECT_LE(b.Count(0), k.num_vertices());
    EXPECT_LE(b.Count(1), k.num_edges());
    for (const auto& iv : b.intervals) {
      EXPECT_LT(iv.birth, iv.death);
      EXPECT_TRUE(iv.dim == 0 || iv.dim == 1);
    }
    EXPECT_EQ(std::count_if(b.intervals.begin(), b.intervals.end(),
                            [](const auto& iv) { return iv.dim == 0 && iv.infinite(); }),
              1);
  }
}

TEST(TdaProperty, MonotoneRescalingMapsBarcode) {
  Rng rng(404);
  const auto f = [](int v) { return 2 * v + 1; };
  for (int trial = 0; trial < 100; ++trial) {
    PixelGrid px = RandomPixels(rng, 12, 128);
    for (auto& v : px.intensity) v = static_cast<std::uint8_t>(v / 2);
    PixelGrid scaled = px;
    for (auto& v : scaled.intensity) v = static_cast<std::uint8_t>(f(v));
    const auto key = [](const PersistenceInterval& iv) {
      return std::make_tuple(iv.dim, iv.birth, iv.death);
    };
    std::vector<std::tuple<int, int, int>> expected, actual;
    for (auto iv : ComputePersistence(CubicalComplex(px)).intervals) {
      iv.birth = f(iv.birth);
      if (!iv.infinite()) iv.death = f(iv.death);
      expected.push_back(key(iv));
    }
    for (const auto& iv : ComputePersistence(CubicalComplex(scaled)).intervals) {
      actual.push_back(key(iv));
    }
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    ASSERT_EQ(expected, actual);
  }
}

}  // namespace
}  // namespace swarm
