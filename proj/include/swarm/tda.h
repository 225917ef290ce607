#ifndef SWARM_TDA_H_
#define SWARM_TDA_H_

#include <array>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "swarm/grid.h"

namespace swarm {

// Lower-star cubical complex of a pixel grid: one vertex per pixel, edges
// between 4-adjacent pixels, one square per 2x2 block. Edges and squares take
// the maximum value of their vertices.
//
// Edge ids: horizontal edges (x, y)-(x+1, y) first, id y * (w - 1) + x; then
// vertical edges (x, y)-(x, y+1), id (w - 1) * h + y * w + x. Square (x, y)
// has lower-left vertex (x, y), id y * (w - 1) + x.
class CubicalComplex {
 public:
  struct Cube {
    int value;
    int dim;
    int index;
  };

  explicit CubicalComplex(const PixelGrid& pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_vertices() const { return width_ * height_; }
  int num_edges() const { return (width_ - 1) * height_ + width_ * (height_ - 1); }
  int num_squares() const { return (width_ - 1) * (height_ - 1); }

  int VertexValue(int v) const { return values_[v]; }
  int EdgeValue(int e) const;
  int SquareValue(int s) const;
  std::pair<int, int> EdgeVertices(int e) const;
  // Bottom, top, left, right edges.
  std::array<int, 4> SquareEdges(int s) const;

  // All cubes sorted by (value, dim, index).
  std::vector<Cube> FiltrationOrder() const;

 private:
  int width_;
  int height_;
  std::vector<int> values_;
};

struct PersistenceInterval {
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  int dim = 0;
  int birth = 0;
  int death = kInfinite;

  bool infinite() const { return death == kInfinite; }
  bool AliveAt(int threshold) const { return birth <= threshold && threshold < death; }
};

struct Barcode {
  std::vector<PersistenceInterval> intervals;

  // (beta0, beta1) of the sublevel complex at `threshold`.
  std::pair<int, int> BettiAt(int threshold) const;
  int Count(int dim) const;
};

// Z/2 persistence in dimensions 0 and 1. Zero-length intervals are dropped.
Barcode ComputePersistence(const CubicalComplex& complex);

// Betti numbers of the sublevel complex at `threshold`, computed directly by
// flood fill and the Euler characteristic.
std::pair<int, int> BettiOracle(const PixelGrid& pixels, int threshold);

inline constexpr int kDefaultPhiMax = 250;

// Intervals that never die within [0, phi_max].
bool IsPersistent(const PersistenceInterval& interval, int phi_max);

// Largest finite death among non-persistent intervals, 0 if there are none.
int SelectThreshold(const Barcode& barcode, int phi_max = kDefaultPhiMax);

struct ThresholdResult {
  int threshold = 0;  // selected classification threshold
  // Intensities strictly above this are occupied. Equals threshold - 1 when a
  // terminating interval exists; otherwise the last birth of a persistent
  // feature (-1 if none).
  int free_cut = -1;
  BinaryGrid map;
};

// Classifies every cell; unexplored cells are always occupied.
ThresholdResult ThresholdMap(const OccupancyGrid& grid, const Barcode& barcode,
                             int phi_max = kDefaultPhiMax);

// dim,birth,death with -1 for an infinite death.
void WriteBarcodeCsv(std::ostream& out, const Barcode& barcode);
// Perseus top-dimensional cubical format: "2", width, height, values.
void WritePerseus(std::ostream& out, const PixelGrid& pixels);

}  // namespace swarm

#endif  // SWARM_TDA_H_
