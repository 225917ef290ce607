#ifndef SWARM_CONSENSUS_H_
#define SWARM_CONSENSUS_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "swarm/grid.h"
#include "swarm/sensor.h"

namespace swarm {

// One timestep of the pairwise protocol. partner[i] is the robot whose map i
// fuses with at weight 0.5, or -1 for a_ii = 1.
struct FusionWeights {
  std::vector<int> partner;

  explicit FusionWeights(int n_robots = 0) : partner(n_robots, -1) {}
  int size() const { return static_cast<int>(partner.size()); }
  // Mutual pairing, no self loops.
  bool Valid() const;
  // The implied adjacency A(k).
  Eigen::MatrixXd Matrix() const;
};

using EdgeList = std::vector<std::pair<int, int>>;

// Pending pairwise encounters, served oldest first. Robots in contact are
// re-enqueued after each fusion; a pair never has more than one entry.
class InteractionScheduler {
 public:
  explicit InteractionScheduler(int n_robots);

  // Enqueues encounters for pairs in contact this step. neighbors[i] lists
  // the robots within range of i; the relation must be symmetric.
  void Observe(const std::vector<std::vector<int>>& neighbors);
  void ObserveEdges(const EdgeList& edges);
  // Greedy matching of pending encounters; each robot fuses at most once.
  FusionWeights Dequeue();

  std::size_t pending() const { return queue_.size(); }
  int n_robots() const { return n_robots_; }

 private:
  int n_robots_;
  std::deque<std::pair<int, int>> queue_;
  std::set<std::pair<int, int>> queued_;
};

// Neighbor lists from an edge list; throws on out-of-range or self edges.
std::vector<std::vector<int>> NeighborsFromEdges(int n_robots, const EdgeList& edges);

// u * sqrt(p_self * p_partner), or u * p_self without a partner, clamped to
// [floor, 1]. Throws on non-positive probabilities or u outside (0, 1].
double FuseValue(double p_self, std::optional<double> p_partner, double u, double floor);

// Eq.-style fusion of a whole grid. `factors` must be sorted by cell; cells
// with u < 1 or explored by the partner become explored.
void FuseStep(OccupancyGrid& grid, const OccupancyGrid* partner,
              std::span<const CellFactor> factors);

// Synchronous round: every matched pair exchanges current maps and both take
// the pairwise geometric mean, then every robot applies its own factors.
// Returns the number of cells whose value hit the probability floor.
std::size_t FusionRound(std::span<OccupancyGrid> grids, const FusionWeights& weights,
                        std::span<const std::vector<CellFactor>> factors);

bool IsDoublyStochastic(const Eigen::MatrixXd& a, double tol = 1e-12);

// LP[k+1] = A LP[k] + Lu with LP = -log2 P (robots x cells). Throws unless A
// is doubly stochastic.
Eigen::MatrixXd LogDynamicsStep(const Eigen::MatrixXd& log_state, const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& log_u);

// Initial probabilities and every measurement factor applied, per cell.
class ConsensusLedger {
 public:
  ConsensusLedger(int n_robots, int n_cells);

  void SetInitial(int robot, std::span<const double> probs);
  void RecordFactor(int step, int robot, int cell, double u);

  // GM(P[0]) * prod_d GM(u[d]); robots without a factor at step d count 1.
  double Limit(int cell) const;
  int n_robots() const { return n_robots_; }
  int n_cells() const { return n_cells_; }
  // Step of the last recorded factor, or -1.
  int last_factor_step() const { return last_factor_step_; }

 private:
  int n_robots_;
  int n_cells_;
  std::vector<double> initial_;  // robot-major
  std::vector<double> log_sum_;  // per cell: sum of -log2 over initial and factors
  int last_factor_step_ = -1;
};

struct RateFit {
  double slope = 0.0;  // per step, natural log; -inf when already converged
  double r_squared = 0.0;
  int points = 0;
};

// Least-squares fit of ln(error) against step over the entries of `errors`
// above `floor`. Slope -inf when nothing is above the floor, or when a
// single point is and the history ends at or below it.
RateFit ConvergenceRate(std::span<const double> errors, double floor = 0.0);

// Whether the union of the edges connects all robots.
bool UnionConnected(int n_robots, std::span<const EdgeList> schedule);

struct ConsensusDemoConfig {
  int n_robots = 5;
  int n_cells = 16;
  int steps = 200;
  int factor_steps = 20;       // scripted factors apply on steps < factor_steps
  double factor_rate = 0.2;    // chance of a factor per robot, cell and step
  double u_low = 0.5;
  double p0_low = 0.2;
  double probability_floor = kDefaultProbabilityFloor;
  std::uint64_t seed = 1;
  std::vector<EdgeList> schedule;  // cycled; empty means ring
};

struct ConsensusDemoRow {
  int step;
  int robot;
  int cell;
  double probability;
  double predicted_limit;
  double abs_error;
};

struct ConsensusDemoResult {
  bool connected = true;
  bool clamped = false;
  std::vector<double> max_error;  // index k: after k steps
  double final_max_error = 0.0;
  RateFit rate;
  std::vector<ConsensusDemoRow> rows;
};

std::vector<EdgeList> RingSchedule(int n_robots);

ConsensusDemoResult RunConsensusDemo(const ConsensusDemoConfig& config);

}  // namespace swarm

#endif  // SWARM_CONSENSUS_H_
