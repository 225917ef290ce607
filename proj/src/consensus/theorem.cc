#include <algorithm>
#include <cmath>
#include <limits>

#include "swarm/consensus.h"

namespace swarm {

ConsensusLedger::ConsensusLedger(int n_robots, int n_cells)
    : n_robots_(n_robots), n_cells_(n_cells) {
  if (n_robots < 1 || n_cells < 0) throw std::invalid_argument("invalid ledger dimensions");
  initial_.assign(static_cast<std::size_t>(n_robots) * n_cells, 1.0);
  log_sum_.assign(n_cells, 0.0);
}

void ConsensusLedger::SetInitial(int robot, std::span<const double> probs) {
  if (static_cast<int>(probs.size()) != n_cells_) {
    throw std::invalid_argument("initial probabilities have the wrong length");
  }
  for (int c = 0; c < n_cells_; ++c) {
    if (!(probs[c] > 0.0 && probs[c] <= 1.0)) {
      throw std::invalid_argument("initial probability outside (0, 1]");
    }
    double& slot = initial_[static_cast<std::size_t>(robot) * n_cells_ + c];
    log_sum_[c] += std::log2(slot) - std::log2(probs[c]);
    slot = probs[c];
  }
}

void ConsensusLedger::RecordFactor(int step, int robot, int cell, double u) {
  if (robot < 0 || robot >= n_robots_ || cell < 0 || cell >= n_cells_) {
    throw std::invalid_argument("ledger factor index out of range");
  }
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("measurement factor outside (0, 1]");
  log_sum_[cell] -= std::log2(u);
  last_factor_step_ = std::max(last_factor_step_, step);
}

double ConsensusLedger::Limit(int cell) const {
  return std::exp2(-log_sum_[cell] / n_robots_);
}

RateFit ConvergenceRate(std::span<const double> errors, double floor) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k] > floor) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(errors[k]));
    }
  }
  RateFit fit;
  fit.points = static_cast<int>(xs.size());
  if (xs.empty()) {
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.r_squared = 1.0;
    return fit;
  }
  if (xs.size() < 2) {
    // A single point above the floor followed by convergence.
    if (errors.back() <= floor) {
      fit.slope = -std::numeric_limits<double>::infinity();
      fit.r_squared = 1.0;
    }
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

ConsensusDemoResult RunConsensusDemo(const ConsensusDemoConfig& config) {
  const int n = config.n_robots;
  const int m = config.n_cells;
  if (n < 1 || m < 1 || config.steps < 0) {
    throw std::invalid_argument("consensus demo needs robots, cells and steps >= 0");
  }
  const std::vector<EdgeList> schedule =
      config.schedule.empty() ? RingSchedule(n) : config.schedule;
  for (const EdgeList& edges : schedule) NeighborsFromEdges(n, edges);

  ConsensusDemoResult result;
  result.connected = UnionConnected(n, schedule);

  Rng rng(config.seed);
  std::vector<OccupancyGrid> grids;
  ConsensusLedger ledger(n, m);
  for (int i = 0; i < n; ++i) {
    grids.emplace_back(m, 1, 1.0, Point2{}, config.probability_floor);
    std::vector<double> p0(m);
    for (int c = 0; c < m; ++c) {
      p0[c] = config.p0_low + (1.0 - config.p0_low) * Uniform01(rng);
      grids.back().SetProbability(c, p0[c]);
    }
    ledger.SetInitial(i, p0);
  }
  // A lone robot has nothing to agree on, so it gets no scripted factors.
  const int factor_steps = n > 1 ? std::min(config.factor_steps, config.steps) : 0;
  std::vector<std::vector<std::vector<CellFactor>>> script(factor_steps);
  for (int k = 0; k < factor_steps; ++k) {
    script[k].resize(n);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < m; ++c) {
        if (Uniform01(rng) < config.factor_rate) {
          const double u = config.u_low + (1.0 - config.u_low) * Uniform01(rng);
          script[k][i].push_back({c, u});
          ledger.RecordFactor(k, i, c, u);
        }
      }
    }
  }
  std::vector<double> limit(m);
  for (int c = 0; c < m; ++c) {
    limit[c] = ledger.Limit(c);
    if (limit[c] < config.probability_floor) result.clamped = true;
  }

  const auto record = [&](int step) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < m; ++c) {
        const double p = grids[i].prob(c);
        const double err = std::abs(p - limit[c]);
        worst = std::max(worst, err);
        result.rows.push_back({step, i, c, p, limit[c], err});
      }
    }
    result.max_error.push_back(worst);
  };

  InteractionScheduler scheduler(n);
  const std::vector<std::vector<CellFactor>> no_factors(n);
  record(0);
  for (int k = 0; k < config.steps; ++k) {
    scheduler.ObserveEdges(schedule[k % schedule.size()]);
    const FusionWeights weights = scheduler.Dequeue();
    const auto& factors = k < factor_steps ? script[k] : no_factors;
    if (FusionRound(grids, weights, factors) > 0) result.clamped = true;
    record(k + 1);
  }
  result.final_max_error = result.max_error.back();
  // Fit the tail after the last factor; values near round-off are excluded.
  const std::size_t tail_start = static_cast<std::size_t>(ledger.last_factor_step() + 1);
  if (tail_start < result.max_error.size()) {
    std::vector<double> tail(result.max_error.begin() + tail_start, result.max_error.end());
    result.rate = ConvergenceRate(tail, 1e-13);
  } else {
    result.rate = ConvergenceRate({}, 1e-13);
  }
  return result;
}

}  // namespace swarm
