#ifndef SWARM_SENSOR_H_
#define SWARM_SENSOR_H_

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "swarm/common.h"
#include "swarm/grid.h"

namespace swarm {

// Planar laser range finder. Beams are evenly spaced over `fov`, centered on
// the robot heading.
struct SensorSpec {
  int n_beams = 19;
  double fov = kPi;
  double s_min = 0.05;
  double s_max = 2.0;
  double sigma = 0.05;  // radial noise std, meters

  void Validate() const;
  // Beam direction relative to the heading, in [-fov/2, fov/2].
  double BeamAngle(int beam) const;
  // Angular spacing between adjacent beams (fov when there is one beam).
  double BeamSpacing() const;
};

struct InverseModelParams {
  double p_f = 0.1;
  double p_a = 0.5;
  double p_hit = 0.9;

  void Validate() const;
};

struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 1.0;
  Point2 origin;

  static GridGeometry Of(const OccupancyGrid& grid) {
    return {grid.width(), grid.height(), grid.resolution(), grid.origin()};
  }
  int size() const { return width * height; }
};

struct BeamCell {
  int cell = 0;
  // Distance from the sensor to the midpoint of the beam's chord through the
  // cell; strictly increasing along a trace.
  double s = 0.0;
};

struct BeamTrace {
  std::vector<BeamCell> cells;
  // Distance to the boundary of the first occupied cell, if within s_max.
  std::optional<double> hit_distance;
};

// Traverses the grid cells crossed by the ray from `start` along `angle`
// (absolute), in order of increasing distance. Calls
// visit(cell_index, t_enter, t_exit) with distances in meters for every cell
// whose chord has positive length; traversal stops when visit returns false,
// the ray leaves the grid, or t_enter exceeds `max_range`.
template <typename Visitor>
void TraverseRay(const GridGeometry& geometry, Point2 start, double angle,
                 double max_range, Visitor&& visit);

// Geometric trace against a map: cells with s <= s_max + sigma, no hit.
// `beam_angle` is relative to pose.theta. Throws if the pose is off-grid.
BeamTrace CastBeam(const GridGeometry& geometry, const Pose2& pose,
                   double beam_angle, const SensorSpec& spec);

// Trace against ground truth. Cells in `extra_occupied` (other robots) count
// as obstacles. The trace ends at the first occupied cell, which is included.
BeamTrace CastBeam(const GridGeometry& geometry, const BinaryGrid& truth,
                   const Pose2& pose, double beam_angle, const SensorSpec& spec,
                   std::span<const int> extra_occupied = {});

// Forward measurement model density P(z | delta). nullopt delta means no
// reflector along the beam.
double ForwardPdf(double z, std::optional<double> delta, const SensorSpec& spec);

// Mean of the forward-model Gaussian selected by delta.
double ForwardMean(std::optional<double> delta, const SensorSpec& spec);

// Mixture P(z) = sum_p P(e_p) N(mean_p, sigma^2) over first-occupied-cell
// events. Component 0 is e_0 (no occupied cell).
class RangeMarginal {
 public:
  RangeMarginal(std::span<const double> cell_probs,
                std::span<const double> cell_dists, const SensorSpec& spec);

  double Density(double z) const;
  std::span<const double> weights() const { return weights_; }
  std::span<const double> means() const { return means_; }
  double sigma() const { return sigma_; }

 private:
  std::vector<double> weights_;
  std::vector<double> means_;
  double sigma_;
};

// Heuristic inverse sensor model l(s, z). nullopt means the cell lies beyond
// the informative range of this reading.
std::optional<double> InverseModel(double s, double z, const SensorSpec& spec,
                                   const InverseModelParams& params);

struct RangeReading {
  double beam_angle = 0.0;  // relative to heading
  double z = 0.0;
};

struct CellFactor {
  int cell = 0;
  double u = 1.0;
};

// Update rule u for every cell informed by the scan: the max of l over the
// readings whose beams reach the cell. Cells not listed have u = 1. Sorted by
// cell index. Readings whose beams would start off-grid are ignored.
std::vector<CellFactor> ComputeUpdateFactors(const GridGeometry& geometry,
                                             const Pose2& pose,
                                             std::span<const RangeReading> scan,
                                             const SensorSpec& spec,
                                             const InverseModelParams& params);

// Update rule u for a single cell; 1 when no reading informs it.
double UpdateRule(int cell, const GridGeometry& geometry, const Pose2& pose,
                  std::span<const RangeReading> scan, const SensorSpec& spec,
                  const InverseModelParams& params);

// Draws a reading from the forward model branch selected by delta, clamped
// to [0, s_max + 3 sigma].
double SimulateMeasurement(std::optional<double> delta, const SensorSpec& spec,
                           Rng& rng);

// ---------------------------------------------------------------------------

template <typename Visitor>
void TraverseRay(const GridGeometry& geometry, Point2 start, double angle,
                 double max_range, Visitor&& visit) {
  const double res = geometry.resolution;
  const double px = (start.x - geometry.origin.x) / res;
  const double py = (start.y - geometry.origin.y) / res;
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  int ix = static_cast<int>(std::floor(px));
  int iy = static_cast<int>(std::floor(py));
  if (ix < 0 || iy < 0 || ix >= geometry.width || iy >= geometry.height) return;

  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Ray parameter (in cell units) at which the next x / y boundary is hit.
  double t_max_x = step_x > 0 ? (ix + 1 - px) / dx : (step_x < 0 ? (px - ix) / -dx : kInf);
  double t_max_y = step_y > 0 ? (iy + 1 - py) / dy : (step_y < 0 ? (py - iy) / -dy : kInf);
  const double t_delta_x = step_x != 0 ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = step_y != 0 ? 1.0 / std::abs(dy) : kInf;
  const double max_t = max_range / res;

  double t_enter = 0.0;
  while (t_enter <= max_t) {
    const double t_exit = std::min(t_max_x, t_max_y);
    if (t_exit - t_enter > 1e-12) {
      if (!visit(iy * geometry.width + ix, t_enter * res, t_exit * res)) return;
    }
    // Corner crossings step diagonally so no zero-length cell is produced.
    const double tie = 1e-12 * std::max(1.0, t_exit);
    const bool move_x = t_max_x <= t_exit + tie;
    const bool move_y = t_max_y <= t_exit + tie;
    if (move_x) {
      ix += step_x;
      t_max_x += t_delta_x;
    }
    if (move_y) {
      iy += step_y;
      t_max_y += t_delta_y;
    }
    if (ix < 0 || iy < 0 || ix >= geometry.width || iy >= geometry.height) return;
    t_enter = t_exit;
  }
}

}  // namespace swarm

#endif  // SWARM_SENSOR_H_
