#include <algorithm>
#include <cmath>

#include "swarm/grid.h"

namespace swarm {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Point2 origin, double probability_floor)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      probability_floor_(probability_floor) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1x1");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  if (!(probability_floor > 0.0 && probability_floor < 1.0)) {
    throw std::invalid_argument("probability floor must lie in (0, 1)");
  }
  const auto n = static_cast<std::size_t>(width) * height;
  prob_.assign(n, 1.0);
  explored_.assign(n, 0);
  update_count_.assign(n, 0);
}

bool OccupancyGrid::Contains(Point2 p) const {
  return CellAt(p).has_value();
}

std::optional<int> OccupancyGrid::CellAt(Point2 p) const {
  const double fx = (p.x - origin_.x) / resolution_;
  const double fy = (p.y - origin_.y) / resolution_;
  if (!(fx >= 0.0 && fy >= 0.0)) return std::nullopt;
  const int x = static_cast<int>(fx);
  const int y = static_cast<int>(fy);
  if (x >= width_ || y >= height_) return std::nullopt;
  return Index(x, y);
}

Point2 OccupancyGrid::CellCenter(int index) const {
  const int x = index % width_;
  const int y = index / width_;
  return {origin_.x + (x + 0.5) * resolution_,
          origin_.y + (y + 0.5) * resolution_};
}

void OccupancyGrid::SetProbability(int index, double p) {
  prob_[index] = std::clamp(p, probability_floor_, 1.0);
  explored_[index] = 1;
}

bool OccupancyGrid::SameGeometry(const OccupancyGrid& other) const {
  return width_ == other.width_ && height_ == other.height_ &&
         resolution_ == other.resolution_ && origin_.x == other.origin_.x &&
         origin_.y == other.origin_.y;
}

}  // namespace swarm
