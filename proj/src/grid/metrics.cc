#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "swarm/grid.h"

namespace swarm {

namespace {

void RequireSameGeometry(std::span<const OccupancyGrid* const> grids) {
  for (const OccupancyGrid* g : grids) {
    if (!g->SameGeometry(*grids.front())) {
      throw std::invalid_argument("grids do not share dimensions");
    }
  }
}

}  // namespace

double BinaryEntropy(double p) {
  double h = 0.0;
  if (p > 0.0 && p < 1.0) {
    h -= p * std::log2(p);
    h -= (1.0 - p) * std::log2(1.0 - p);
  }
  return h;
}

double MapEntropy(const OccupancyGrid& grid) {
  const auto prob = grid.probabilities();
  const auto explored = grid.explored_flags();
  double total = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (explored[i]) total += BinaryEntropy(prob[i]);
  }
  return total;
}

double CoveragePercent(std::span<const OccupancyGrid* const> grids) {
  if (grids.empty()) throw std::invalid_argument("coverage needs at least one grid");
  RequireSameGeometry(grids);
  const int n = grids.front()->size();
  int covered = 0;
  for (int i = 0; i < n; ++i) {
    for (const OccupancyGrid* g : grids) {
      if (g->explored(i)) {
        ++covered;
        break;
      }
    }
  }
  return 100.0 * covered / n;
}

double MapErrorPercent(const OccupancyGrid& estimate, const BinaryGrid& truth) {
  if (truth.width != estimate.width() || truth.height != estimate.height()) {
    throw std::invalid_argument("map and ground truth dimensions differ");
  }
  const auto prob = estimate.probabilities();
  double total = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    total += std::abs(prob[i] - (truth.occupied[i] ? 1.0 : 0.0));
  }
  return 100.0 * total / static_cast<double>(prob.size());
}

double ProbabilityMatrixNorm(const OccupancyGrid& grid) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> p(grid.probabilities().data(), grid.height(),
                                     grid.width());
  // Power iteration on P^T P. Entries are positive, so the all-ones start has
  // a nonzero component along the top right-singular vector.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(grid.width()).normalized();
  double sigma = 0.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const Eigen::VectorXd u = p * v;
    const double next = u.norm();
    Eigen::VectorXd w = p.transpose() * u;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (std::abs(next - sigma) <= 1e-14 * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

double ConsensusSpreadFromNorms(std::span<const double> norms) {
  if (norms.size() < 2) throw std::invalid_argument("consensus spread needs at least two maps");
  const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
  if (*hi == 0.0) return 0.0;
  return 1.0 - *lo / *hi;
}

double ConsensusSpread(std::span<const OccupancyGrid* const> grids) {
  if (grids.size() < 2) throw std::invalid_argument("consensus spread needs at least two maps");
  RequireSameGeometry(grids);
  std::vector<double> norms;
  norms.reserve(grids.size());
  for (const OccupancyGrid* g : grids) norms.push_back(ProbabilityMatrixNorm(*g));
  return ConsensusSpreadFromNorms(norms);
}

std::uint8_t ProbabilityToIntensity(double p) {
  const double scaled = std::floor(p * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

PixelGrid ToPixels(const OccupancyGrid& grid) {
  PixelGrid pixels{grid.width(), grid.height(), {}};
  pixels.intensity.resize(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    pixels.intensity[i] = grid.explored(i) ? ProbabilityToIntensity(grid.prob(i)) : 255;
  }
  return pixels;
}

}  // namespace swarm
