#include <algorithm>

#include "swarm/tda.h"

namespace swarm {

CubicalComplex::CubicalComplex(const PixelGrid& pixels)
    : width_(pixels.width), height_(pixels.height) {
  if (width_ < 1 || height_ < 1 ||
      pixels.intensity.size() != static_cast<std::size_t>(width_) * height_) {
    throw std::invalid_argument("cubical complex needs a nonempty pixel grid");
  }
  values_.assign(pixels.intensity.begin(), pixels.intensity.end());
}

std::pair<int, int> CubicalComplex::EdgeVertices(int e) const {
  const int n_horizontal = (width_ - 1) * height_;
  if (e < n_horizontal) {
    const int y = e / (width_ - 1);
    const int x = e % (width_ - 1);
    return {y * width_ + x, y * width_ + x + 1};
  }
  const int v = e - n_horizontal;
  return {v, v + width_};
}

int CubicalComplex::EdgeValue(int e) const {
  const auto [a, b] = EdgeVertices(e);
  return std::max(values_[a], values_[b]);
}

std::array<int, 4> CubicalComplex::SquareEdges(int s) const {
  const int y = s / (width_ - 1);
  const int x = s % (width_ - 1);
  const int n_horizontal = (width_ - 1) * height_;
  return {y * (width_ - 1) + x, (y + 1) * (width_ - 1) + x,
          n_horizontal + y * width_ + x, n_horizontal + y * width_ + x + 1};
}

int CubicalComplex::SquareValue(int s) const {
  const int y = s / (width_ - 1);
  const int x = s % (width_ - 1);
  const int v = y * width_ + x;
  return std::max({values_[v], values_[v + 1], values_[v + width_], values_[v + width_ + 1]});
}

std::vector<CubicalComplex::Cube> CubicalComplex::FiltrationOrder() const {
  std::vector<Cube> cubes;
  cubes.reserve(num_vertices() + num_edges() + num_squares());
  for (int v = 0; v < num_vertices(); ++v) cubes.push_back({values_[v], 0, v});
  for (int e = 0; e < num_edges(); ++e) cubes.push_back({EdgeValue(e), 1, e});
  for (int s = 0; s < num_squares(); ++s) cubes.push_back({SquareValue(s), 2, s});
  std::sort(cubes.begin(), cubes.end(), [](const Cube& a, const Cube& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.index < b.index;
  });
  return cubes;
}

}  // namespace swarm
