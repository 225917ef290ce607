#include <algorithm>
#include <numeric>

#include "swarm/consensus.h"

namespace swarm {

bool FusionWeights::Valid() const {
  for (int i = 0; i < size(); ++i) {
    const int n = partner[i];
    if (n == -1) continue;
    if (n < 0 || n >= size() || n == i || partner[n] != i) return false;
  }
  return true;
}

Eigen::MatrixXd FusionWeights::Matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
  for (int i = 0; i < size(); ++i) {
    if (partner[i] < 0) {
      a(i, i) = 1.0;
    } else {
      a(i, i) = 0.5;
      a(i, partner[i]) = 0.5;
    }
  }
  return a;
}

InteractionScheduler::InteractionScheduler(int n_robots) : n_robots_(n_robots) {
  if (n_robots < 1) throw std::invalid_argument("scheduler needs at least one robot");
}

void InteractionScheduler::Observe(const std::vector<std::vector<int>>& neighbors) {
  if (static_cast<int>(neighbors.size()) != n_robots_) {
    throw std::invalid_argument("neighbor sets do not match robot count");
  }
  EdgeList edges;
  for (int i = 0; i < n_robots_; ++i) {
    for (int n : neighbors[i]) {
      if (n < 0 || n >= n_robots_ || n == i) {
        throw std::invalid_argument("invalid neighbor index");
      }
      const auto& back = neighbors[n];
      if (std::find(back.begin(), back.end(), i) == back.end()) {
        throw std::invalid_argument("neighbor relation is not symmetric");
      }
      if (i < n) edges.emplace_back(i, n);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& e : edges) {
    if (queued_.insert(e).second) queue_.push_back(e);
  }
}

void InteractionScheduler::ObserveEdges(const EdgeList& edges) {
  Observe(NeighborsFromEdges(n_robots_, edges));
}

FusionWeights InteractionScheduler::Dequeue() {
  FusionWeights weights(n_robots_);
  for (auto it = queue_.begin(); it != queue_.end();) {
    const auto [a, b] = *it;
    if (weights.partner[a] < 0 && weights.partner[b] < 0) {
      weights.partner[a] = b;
      weights.partner[b] = a;
      queued_.erase(*it);
      it = queue_.erase(it);
    } else {
      ++it;
    }
  }
  return weights;
}

std::vector<std::vector<int>> NeighborsFromEdges(int n_robots, const EdgeList& edges) {
  std::vector<std::vector<int>> neighbors(n_robots);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_robots || b >= n_robots || a == b) {
      throw std::invalid_argument("invalid edge in schedule");
    }
    if (std::find(neighbors[a].begin(), neighbors[a].end(), b) == neighbors[a].end()) {
      neighbors[a].push_back(b);
      neighbors[b].push_back(a);
    }
  }
  return neighbors;
}

bool UnionConnected(int n_robots, std::span<const EdgeList> schedule) {
  std::vector<int> parent(n_robots);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n_robots;
  for (const EdgeList& edges : schedule) {
    for (const auto& [a, b] : edges) {
      const int ra = find(a);
      const int rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
  }
  return components <= 1;
}

std::vector<EdgeList> RingSchedule(int n_robots) {
  EdgeList ring;
  if (n_robots == 2) {
    ring.emplace_back(0, 1);
  } else if (n_robots > 2) {
    for (int i = 0; i < n_robots; ++i) ring.emplace_back(i, (i + 1) % n_robots);
  }
  return {ring};
}

}  // namespace swarm
