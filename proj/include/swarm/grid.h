#ifndef SWARM_GRID_H_
#define SWARM_GRID_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarm/common.h"

namespace swarm {

inline constexpr double kDefaultProbabilityFloor = 1e-3;

// A robot's occupancy grid map. Cell (0, 0) has its lower-left corner at
// `origin`; cells are stored row-major with y increasing upwards. Unexplored
// cells hold probability exactly 1.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, Point2 origin,
                double probability_floor = kDefaultProbabilityFloor);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }
  double resolution() const { return resolution_; }
  Point2 origin() const { return origin_; }
  double probability_floor() const { return probability_floor_; }

  int Index(int x, int y) const { return y * width_ + x; }
  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool Contains(Point2 p) const;
  // Cell containing a world point, or nullopt outside the grid.
  std::optional<int> CellAt(Point2 p) const;
  Point2 CellCenter(int index) const;

  double prob(int index) const { return prob_[index]; }
  bool explored(int index) const { return explored_[index] != 0; }
  int update_count(int index) const { return update_count_[index]; }

  // Clamps into [floor, 1] and marks the cell explored.
  void SetProbability(int index, double p);
  void MarkExplored(int index) { explored_[index] = 1; }
  void IncrementUpdateCount(int index) { ++update_count_[index]; }

  std::span<const double> probabilities() const { return prob_; }
  std::span<double> mutable_probabilities() { return prob_; }
  std::span<const std::uint8_t> explored_flags() const { return explored_; }
  std::span<std::uint8_t> mutable_explored_flags() { return explored_; }

  // Same width/height/resolution/origin.
  bool SameGeometry(const OccupancyGrid& other) const;

 private:
  int width_;
  int height_;
  double resolution_;
  Point2 origin_;
  double probability_floor_;
  std::vector<double> prob_;
  std::vector<std::uint8_t> explored_;
  std::vector<int> update_count_;
};

// Binary ground-truth occupancy, same indexing as OccupancyGrid.
struct BinaryGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> occupied;

  bool at(int x, int y) const { return occupied[y * width + x] != 0; }
};

// 8-bit intensities, same indexing as OccupancyGrid (row 0 is the bottom).
struct PixelGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> intensity;

  int at(int x, int y) const { return intensity[y * width + x]; }
};

// Shannon entropy in bits, summed over explored cells only.
double MapEntropy(const OccupancyGrid& grid);

// Binary entropy H_b(p) in bits with 0 log 0 = 0.
double BinaryEntropy(double p);

// Percentage of all cells (obstacles included) explored in at least one grid.
double CoveragePercent(std::span<const OccupancyGrid* const> grids);

// 100 * mean |prob - truth| over all cells.
double MapErrorPercent(const OccupancyGrid& estimate, const BinaryGrid& truth);

// Largest singular value of the probability matrix (height x width).
double ProbabilityMatrixNorm(const OccupancyGrid& grid);

// 1 - min_i ||P_i||_2 / max_i ||P_i||_2 over the robots' maps.
double ConsensusSpread(std::span<const OccupancyGrid* const> grids);
double ConsensusSpreadFromNorms(std::span<const double> norms);

// round(prob * 255), half-up.
std::uint8_t ProbabilityToIntensity(double p);
PixelGrid ToPixels(const OccupancyGrid& grid);

enum class PgmFormat { kBinary, kPlain };  // P5, P2

// The top PGM row is the maximum-y grid row.
void WritePgm(const std::string& path, const PixelGrid& pixels,
              PgmFormat format = PgmFormat::kBinary);
PixelGrid ReadPgm(const std::string& path);

// Ground truth import: intensity < 128 is occupied.
BinaryGrid PixelsToOccupancy(const PixelGrid& pixels);
PixelGrid OccupancyToPixels(const BinaryGrid& grid);

}  // namespace swarm

#endif  // SWARM_GRID_H_
