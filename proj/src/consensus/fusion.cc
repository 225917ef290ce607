#include <algorithm>
#include <cmath>

#include "swarm/consensus.h"

namespace swarm {

double FuseValue(double p_self, std::optional<double> p_partner, double u, double floor) {
  if (!(p_self > 0.0) || (p_partner && !(*p_partner > 0.0))) {
    throw std::invalid_argument("fusion requires positive probabilities");
  }
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("measurement factor outside (0, 1]");
  const double base = p_partner ? std::sqrt(p_self * *p_partner) : p_self;
  return std::clamp(u * base, floor, 1.0);
}

void FuseStep(OccupancyGrid& grid, const OccupancyGrid* partner,
              std::span<const CellFactor> factors) {
  if (partner && !grid.SameGeometry(*partner)) {
    throw std::invalid_argument("partner map has different geometry");
  }
  auto prob = grid.mutable_probabilities();
  auto explored = grid.mutable_explored_flags();
  const double floor = grid.probability_floor();
  std::size_t f = 0;
  for (int c = 0; c < grid.size(); ++c) {
    double u = 1.0;
    if (f < factors.size() && factors[f].cell == c) u = factors[f++].u;
    std::optional<double> other;
    if (partner) {
      other = partner->prob(c);
      if (partner->explored(c)) explored[c] = 1;
    }
    if (u < 1.0) explored[c] = 1;
    if (!other && u == 1.0) continue;
    prob[c] = FuseValue(prob[c], other, u, floor);
  }
}

std::size_t FusionRound(std::span<OccupancyGrid> grids, const FusionWeights& weights,
                        std::span<const std::vector<CellFactor>> factors) {
  if (weights.size() != static_cast<int>(grids.size()) || factors.size() != grids.size()) {
    throw std::invalid_argument("fusion round inputs disagree on robot count");
  }
  if (!weights.Valid()) throw std::invalid_argument("fusion weights are not a mutual pairing");
  for (int i = 0; i < weights.size(); ++i) {
    const int n = weights.partner[i];
    if (n <= i) continue;
    OccupancyGrid& a = grids[i];
    OccupancyGrid& b = grids[n];
    if (!a.SameGeometry(b)) throw std::invalid_argument("robot maps differ in geometry");
    auto pa = a.mutable_probabilities();
    auto pb = b.mutable_probabilities();
    auto ea = a.mutable_explored_flags();
    auto eb = b.mutable_explored_flags();
    for (std::size_t c = 0; c < pa.size(); ++c) {
      const double g = std::sqrt(pa[c] * pb[c]);
      pa[c] = g;
      pb[c] = g;
      const std::uint8_t e = ea[c] | eb[c];
      ea[c] = e;
      eb[c] = e;
    }
  }
  std::size_t clamps = 0;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    OccupancyGrid& g = grids[i];
    auto p = g.mutable_probabilities();
    auto e = g.mutable_explored_flags();
    for (const CellFactor& f : factors[i]) {
      if (!(f.u > 0.0 && f.u <= 1.0)) {
        throw std::invalid_argument("measurement factor outside (0, 1]");
      }
      const double v = f.u * p[f.cell];
      if (v < g.probability_floor()) ++clamps;
      p[f.cell] = std::max(v, g.probability_floor());
      e[f.cell] = 1;
    }
  }
  return clamps;
}

bool IsDoublyStochastic(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if ((a.array() < 0.0).any()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (std::abs(a.row(i).sum() - 1.0) > tol) return false;
    if (std::abs(a.col(i).sum() - 1.0) > tol) return false;
  }
  return true;
}

Eigen::MatrixXd LogDynamicsStep(const Eigen::MatrixXd& log_state, const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& log_u) {
  if (!IsDoublyStochastic(a)) throw std::invalid_argument("adjacency is not doubly stochastic");
  if (a.cols() != log_state.rows() || log_u.rows() != log_state.rows() ||
      log_u.cols() != log_state.cols()) {
    throw std::invalid_argument("log dynamics dimensions disagree");
  }
  return a * log_state + log_u;
}

}  // namespace swarm
