#include <algorithm>

#include "swarm/sensor.h"

namespace swarm {

std::vector<CellFactor> ComputeUpdateFactors(const GridGeometry& geometry,
                                             const Pose2& pose,
                                             std::span<const RangeReading> scan,
                                             const SensorSpec& spec,
                                             const InverseModelParams& params) {
  std::vector<CellFactor> hits;
  const double fx = (pose.x - geometry.origin.x) / geometry.resolution;
  const double fy = (pose.y - geometry.origin.y) / geometry.resolution;
  if (!(fx >= 0.0 && fy >= 0.0 && fx < geometry.width && fy < geometry.height)) {
    return hits;
  }
  for (const RangeReading& reading : scan) {
    const BeamTrace trace = CastBeam(geometry, pose, reading.beam_angle, spec);
    const double reach = std::min(reading.z, spec.s_max) + spec.sigma;
    for (const BeamCell& bc : trace.cells) {
      if (bc.s > reach) break;
      if (auto l = InverseModel(bc.s, reading.z, spec, params)) {
        hits.push_back({bc.cell, *l});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const CellFactor& a, const CellFactor& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.u > b.u;
  });
  // Keep the largest l per cell (first after sorting).
  std::vector<CellFactor> factors;
  for (const CellFactor& h : hits) {
    if (factors.empty() || factors.back().cell != h.cell) factors.push_back(h);
  }
  return factors;
}

double UpdateRule(int cell, const GridGeometry& geometry, const Pose2& pose,
                  std::span<const RangeReading> scan, const SensorSpec& spec,
                  const InverseModelParams& params) {
  for (const CellFactor& f : ComputeUpdateFactors(geometry, pose, scan, spec, params)) {
    if (f.cell == cell) return f.u;
  }
  return 1.0;
}

}  // namespace swarm
