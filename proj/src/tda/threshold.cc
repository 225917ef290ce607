#include <algorithm>

#include "swarm/tda.h"

namespace swarm {

bool IsPersistent(const PersistenceInterval& interval, int phi_max) {
  return interval.infinite() || interval.death > phi_max;
}

int SelectThreshold(const Barcode& barcode, int phi_max) {
  int threshold = 0;
  for (const PersistenceInterval& iv : barcode.intervals) {
    if (IsPersistent(iv, phi_max) || iv.birth == iv.death) continue;
    threshold = std::max(threshold, iv.death);
  }
  return threshold;
}

ThresholdResult ThresholdMap(const OccupancyGrid& grid, const Barcode& barcode, int phi_max) {
  ThresholdResult result;
  result.threshold = SelectThreshold(barcode, phi_max);
  if (result.threshold > 0) {
    result.free_cut = result.threshold - 1;
  } else {
    // Nothing terminates: every feature that appeared up to phi_max is part
    // of the observed free space.
    for (const PersistenceInterval& iv : barcode.intervals) {
      if (IsPersistent(iv, phi_max) && iv.birth <= phi_max) {
        result.free_cut = std::max(result.free_cut, iv.birth);
      }
    }
  }
  const PixelGrid pixels = ToPixels(grid);
  result.map = BinaryGrid{grid.width(), grid.height(), {}};
  result.map.occupied.resize(grid.size());
  for (int c = 0; c < grid.size(); ++c) {
    const bool occupied = !grid.explored(c) || pixels.intensity[c] > result.free_cut;
    result.map.occupied[c] = occupied ? 1 : 0;
  }
  return result;
}

}  // namespace swarm
