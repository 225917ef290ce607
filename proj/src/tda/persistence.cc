#include <algorithm>
#include <numeric>
#include <queue>

#include "swarm/tda.h"

namespace swarm {

namespace {

// Symmetric difference of two columns sorted in decreasing order.
void AddColumn(std::vector<int>& target, const std::vector<int>& source,
               std::vector<int>& scratch) {
  scratch.clear();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < target.size() && j < source.size()) {
    if (target[i] > source[j]) {
      scratch.push_back(target[i++]);
    } else if (target[i] < source[j]) {
      scratch.push_back(source[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  scratch.insert(scratch.end(), target.begin() + i, target.end());
  scratch.insert(scratch.end(), source.begin() + j, source.end());
  target.swap(scratch);
}

}  // namespace

std::pair<int, int> Barcode::BettiAt(int threshold) const {
  int b0 = 0;
  int b1 = 0;
  for (const PersistenceInterval& iv : intervals) {
    if (!iv.AliveAt(threshold)) continue;
    (iv.dim == 0 ? b0 : b1) += 1;
  }
  return {b0, b1};
}

int Barcode::Count(int dim) const {
  return static_cast<int>(std::count_if(intervals.begin(), intervals.end(),
                                        [dim](const auto& iv) { return iv.dim == dim; }));
}

Barcode ComputePersistence(const CubicalComplex& complex) {
  const std::vector<CubicalComplex::Cube> order = complex.FiltrationOrder();
  const int nv = complex.num_vertices();
  const int ne = complex.num_edges();

  // Filtration position of every vertex and edge.
  std::vector<int> vertex_pos(nv);
  std::vector<int> edge_pos(ne);
  std::vector<int> edge_at;  // position -> edge id, for edges only
  edge_at.assign(order.size(), -1);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto& c = order[p];
    if (c.dim == 0) vertex_pos[c.index] = static_cast<int>(p);
    if (c.dim == 1) {
      edge_pos[c.index] = static_cast<int>(p);
      edge_at[p] = c.index;
    }
  }

  Barcode barcode;
  const auto emit = [&barcode](int dim, int birth, int death) {
    if (birth != death) barcode.intervals.push_back({dim, birth, death});
  };

  // Dimension 0: union-find with the elder rule. The root of each component
  // is its earliest vertex.
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::uint8_t> positive_edge(ne, 0);
  for (const auto& c : order) {
    if (c.dim != 1) continue;
    const auto [a, b] = complex.EdgeVertices(c.index);
    int ra = find(a);
    int rb = find(b);
    if (ra == rb) {
      positive_edge[c.index] = 1;
      continue;
    }
    if (vertex_pos[ra] > vertex_pos[rb]) std::swap(ra, rb);
    emit(0, complex.VertexValue(rb), c.value);
    parent[rb] = ra;
  }
  for (int v = 0; v < nv; ++v) {
    if (find(v) == v) {
      barcode.intervals.push_back({0, complex.VertexValue(v), PersistenceInterval::kInfinite});
    }
  }

  // Dimension 1: reduce square boundaries; the pivot is the latest edge.
  std::vector<std::vector<int>> reduced_by_pivot(order.size());
  std::vector<std::uint8_t> paired(ne, 0);
  std::vector<int> column;
  std::vector<int> scratch;
  for (const auto& c : order) {
    if (c.dim != 2) continue;
    column.clear();
    for (int e : complex.SquareEdges(c.index)) column.push_back(edge_pos[e]);
    std::sort(column.begin(), column.end(), std::greater<>());
    while (!column.empty() && !reduced_by_pivot[column.front()].empty()) {
      AddColumn(column, reduced_by_pivot[column.front()], scratch);
    }
    if (column.empty()) continue;  // would be a 2-cycle; impossible in the plane
    const int pivot_edge = edge_at[column.front()];
    paired[pivot_edge] = 1;
    emit(1, complex.EdgeValue(pivot_edge), c.value);
    reduced_by_pivot[column.front()] = column;
  }
  for (int e = 0; e < ne; ++e) {
    if (positive_edge[e] && !paired[e]) {
      barcode.intervals.push_back({1, complex.EdgeValue(e), PersistenceInterval::kInfinite});
    }
  }
  return barcode;
}

std::pair<int, int> BettiOracle(const PixelGrid& pixels, int threshold) {
  const int w = pixels.width;
  const int h = pixels.height;
  const auto in = [&](int x, int y) { return pixels.at(x, y) <= threshold; };
  long vertices = 0;
  long edges = 0;
  long squares = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!in(x, y)) continue;
      ++vertices;
      if (x + 1 < w && in(x + 1, y)) ++edges;
      if (y + 1 < h && in(x, y + 1)) ++edges;
      if (x + 1 < w && y + 1 < h && in(x + 1, y) && in(x, y + 1) && in(x + 1, y + 1)) {
        ++squares;
      }
    }
  }
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  int components = 0;
  std::queue<std::pair<int, int>> frontier;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!in(x0, y0) || seen[y0 * w + x0]) continue;
      ++components;
      seen[y0 * w + x0] = 1;
      frontier.push({x0, y0});
      while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop();
        const int dx[] = {1, -1, 0, 0};
        const int dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = x + dx[k];
          const int ny = y + dy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (!in(nx, ny) || seen[ny * w + nx]) continue;
          seen[ny * w + nx] = 1;
          frontier.push({nx, ny});
        }
      }
    }
  }
  const long b1 = components - vertices + edges - squares;
  return {components, static_cast<int>(b1)};
}

}  // namespace swarm
