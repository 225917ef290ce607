#include <algorithm>
#include <cmath>

#include "swarm/sim.h"

namespace swarm {

namespace {

// Rasterizes by cell center.
template <typename Shape>
void Fill(BinaryGrid& grid, double resolution, Shape&& inside) {
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      const double cx = (x + 0.5) * resolution;
      const double cy = (y + 0.5) * resolution;
      if (inside(cx, cy)) grid.occupied[y * grid.width + x] = 1;
    }
  }
}

void FillBox(BinaryGrid& g, double res, double x0, double y0, double x1, double y1) {
  Fill(g, res, [=](double x, double y) { return x >= x0 && x <= x1 && y >= y0 && y <= y1; });
}

void FillEllipse(BinaryGrid& g, double res, double cx, double cy, double rx, double ry) {
  Fill(g, res, [=](double x, double y) {
    const double dx = (x - cx) / rx;
    const double dy = (y - cy) / ry;
    return dx * dx + dy * dy <= 1.0;
  });
}

BinaryGrid EmptyGrid(double width_m, double height_m, double resolution) {
  BinaryGrid g;
  g.width = static_cast<int>(std::lround(width_m / resolution));
  g.height = static_cast<int>(std::lround(height_m / resolution));
  g.occupied.assign(static_cast<std::size_t>(g.width) * g.height, 0);
  return g;
}

}  // namespace

std::optional<int> WorldMap::CellAt(Point2 p) const {
  const double fx = (p.x - origin.x) / resolution;
  const double fy = (p.y - origin.y) / resolution;
  if (!(fx >= 0.0 && fy >= 0.0 && fx < grid.width && fy < grid.height)) return std::nullopt;
  return static_cast<int>(fy) * grid.width + static_cast<int>(fx);
}

WorldMap MakeWorld(BinaryGrid grid, double resolution) {
  if (grid.width < 1 || grid.height < 1) throw IoError("world has non-positive dimensions");
  if (!(resolution > 0.0)) throw std::invalid_argument("world resolution must be positive");
  for (int x = 0; x < grid.width; ++x) {
    grid.occupied[x] = 1;
    grid.occupied[(grid.height - 1) * grid.width + x] = 1;
  }
  for (int y = 0; y < grid.height; ++y) {
    grid.occupied[y * grid.width] = 1;
    grid.occupied[y * grid.width + grid.width - 1] = 1;
  }
  if (std::find(grid.occupied.begin(), grid.occupied.end(), 0) == grid.occupied.end()) {
    throw IoError("world has no free space");
  }
  return WorldMap{std::move(grid), resolution, {}};
}

WorldMap LoadWorld(const std::string& path, double resolution) {
  return MakeWorld(PixelsToOccupancy(ReadPgm(path)), resolution);
}

WorldMap BuiltinWorld(const std::string& name, double resolution) {
  if (name == "empty") return MakeWorld(EmptyGrid(16.0, 16.0, resolution), resolution);
  if (name == "cave") {
    BinaryGrid g = EmptyGrid(16.0, 16.0, resolution);
    FillEllipse(g, resolution, 4.0, 4.0, 1.3, 1.3);
    FillBox(g, resolution, 9.5, 3.0, 12.5, 5.5);
    FillEllipse(g, resolution, 4.5, 11.5, 1.8, 1.1);
    FillBox(g, resolution, 10.0, 10.0, 13.5, 11.0);
    FillBox(g, resolution, 10.0, 10.0, 11.0, 13.5);
    return MakeWorld(std::move(g), resolution);
  }
  if (name == "two_room") {
    BinaryGrid g = EmptyGrid(40.0, 30.0, resolution);
    FillBox(g, resolution, 19.8, 0.0, 20.2, 14.0);
    FillBox(g, resolution, 19.8, 16.0, 20.2, 30.0);
    FillBox(g, resolution, 6.0, 6.0, 9.0, 9.0);
    FillEllipse(g, resolution, 10.0, 22.0, 1.5, 1.5);
    FillBox(g, resolution, 28.0, 6.0, 34.0, 8.0);
    FillEllipse(g, resolution, 30.0, 22.0, 2.0, 2.0);
    return MakeWorld(std::move(g), resolution);
  }
  throw std::invalid_argument("unknown builtin world '" + name + "'");
}

WorldMap ResolveWorld(const std::string& spec, double resolution) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return BuiltinWorld(spec.substr(prefix.size()), resolution);
  return LoadWorld(spec, resolution);
}

std::vector<std::uint8_t> AccessibleMask(const WorldMap& world) {
  const BinaryGrid& g = world.grid;
  std::vector<std::uint8_t> mask(g.occupied.size(), 0);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int c = y * g.width + x;
      if (!g.occupied[c]) {
        mask[c] = 1;
        continue;
      }
      const int dx[] = {1, -1, 0, 0};
      const int dy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx >= 0 && ny >= 0 && nx < g.width && ny < g.height && !g.at(nx, ny)) {
          mask[c] = 1;
          break;
        }
      }
    }
  }
  return mask;
}

}  // namespace swarm
