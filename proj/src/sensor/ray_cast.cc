#include <algorithm>

#include "swarm/sensor.h"

namespace swarm {

namespace {

Point2 CheckedStart(const GridGeometry& geometry, const Pose2& pose) {
  const double fx = (pose.x - geometry.origin.x) / geometry.resolution;
  const double fy = (pose.y - geometry.origin.y) / geometry.resolution;
  if (!(fx >= 0.0 && fy >= 0.0 && fx < geometry.width && fy < geometry.height)) {
    throw std::invalid_argument("beam origin lies outside the grid");
  }
  return {pose.x, pose.y};
}

}  // namespace

BeamTrace CastBeam(const GridGeometry& geometry, const Pose2& pose,
                   double beam_angle, const SensorSpec& spec) {
  const Point2 start = CheckedStart(geometry, pose);
  const double limit = spec.s_max + spec.sigma;
  BeamTrace trace;
  TraverseRay(geometry, start, pose.theta + beam_angle, limit,
              [&](int cell, double t0, double t1) {
                const double s = 0.5 * (t0 + t1);
                if (s > limit) return false;
                trace.cells.push_back({cell, s});
                return true;
              });
  return trace;
}

BeamTrace CastBeam(const GridGeometry& geometry, const BinaryGrid& truth,
                   const Pose2& pose, double beam_angle, const SensorSpec& spec,
                   std::span<const int> extra_occupied) {
  if (truth.width != geometry.width || truth.height != geometry.height) {
    throw std::invalid_argument("ground truth does not match grid geometry");
  }
  const Point2 start = CheckedStart(geometry, pose);
  const double limit = spec.s_max + spec.sigma;
  BeamTrace trace;
  std::optional<double> hit;
  TraverseRay(geometry, start, pose.theta + beam_angle, limit,
              [&](int cell, double t0, double t1) {
                const bool occupied =
                    truth.occupied[cell] != 0 ||
                    std::find(extra_occupied.begin(), extra_occupied.end(), cell) !=
                        extra_occupied.end();
                const double s = 0.5 * (t0 + t1);
                if (s <= limit) trace.cells.push_back({cell, s});
                if (occupied) {
                  hit = t0;
                  return false;
                }
                return s <= limit;
              });
  if (hit && *hit <= spec.s_max) trace.hit_distance = hit;
  return trace;
}

}  // namespace swarm
