#include <algorithm>
#include <cmath>

#include "swarm/explore.h"

namespace swarm {

namespace {

bool Blocked(const OccupancyGrid& map, int cell, double cutoff) {
  return map.explored(cell) && map.prob(cell) > cutoff;
}

// Beams cast from one pose, scored against the robot's own map.
void ScorePose(const OccupancyGrid& map, const GridGeometry& geometry,
               const Pose2& pose, int pose_index, const SensorSpec& spec,
               const PlannerOptions& options, std::vector<CandidateBeam>& out) {
  std::vector<double> probs;
  std::vector<double> dists;
  for (int a = 0; a < spec.n_beams; ++a) {
    const double angle = spec.BeamAngle(a);
    const BeamTrace trace = CastBeam(geometry, pose, angle, spec);
    probs.clear();
    dists.clear();
    for (const BeamCell& bc : trace.cells) {
      probs.push_back(map.explored(bc.cell) ? map.prob(bc.cell) : options.unexplored_prior);
      dists.push_back(bc.s);
    }
    out.push_back({pose_index, pose.theta + angle, BeamMi(probs, dists, spec)});
  }
}

}  // namespace

double PlannerOptions::EffectiveSampleDt(const SensorSpec& spec, double speed) const {
  return sample_dt > 0.0 ? sample_dt : 2.0 * spec.s_max / (3.0 * speed);
}

double TrajectoryMi(const OccupancyGrid& map, const Pose2& pose, double heading,
                    double speed, double duration, const SensorSpec& spec,
                    const PlannerOptions& options) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  const double sample_dt = options.EffectiveSampleDt(spec, speed);
  const GridGeometry geometry = GridGeometry::Of(map);
  if (!map.CellAt({pose.x, pose.y})) return 0.0;

  std::vector<CandidateBeam> beams;
  Pose2 current{pose.x, pose.y, heading};
  ScorePose(map, geometry, current, 0, spec, options, beams);
  const double spacing = speed * sample_dt;
  const int n_more = duration > 0.0 ? static_cast<int>(std::floor(duration / sample_dt + 1e-9)) : 0;
  for (int k = 1; k <= n_more; ++k) {
    // The rollout stops at the first blocked or off-grid cell on the segment.
    bool blocked = false;
    double covered = 0.0;
    TraverseRay(geometry, {current.x, current.y}, heading, spacing,
                [&](int cell, double t0, double t1) {
                  if (t0 > spacing) return false;
                  if (Blocked(map, cell, options.obstacle_cutoff)) {
                    blocked = true;
                    return false;
                  }
                  covered = t1;
                  return true;
                });
    if (blocked || covered < spacing) break;
    current.x += spacing * std::cos(heading);
    current.y += spacing * std::sin(heading);
    if (!map.CellAt({current.x, current.y})) break;
    ScorePose(map, geometry, current, k, spec, options, beams);
  }
  double total = 0.0;
  for (std::size_t i : SelectBeams(beams, options.tau_mi, spec.BeamSpacing())) {
    total += beams[i].mi;
  }
  return total;
}

double HeadingCost(double dtheta, double phi) {
  return 2.0 * std::sin(std::abs(WrapAngle(dtheta)) / 2.0) + phi;
}

std::vector<double> CandidateHeadings(double current_heading, int n_candidates) {
  if (n_candidates < 1) throw std::invalid_argument("need at least one heading candidate");
  std::vector<double> headings;
  headings.reserve(n_candidates);
  for (int j = 0; j < n_candidates; ++j) {
    headings.push_back(WrapAngle(current_heading + 2.0 * kPi * j / n_candidates));
  }
  return headings;
}

std::size_t BestCandidate(std::span<const CandidateScore> candidates,
                          double current_heading, std::span<const std::uint8_t> allowed) {
  if (candidates.empty()) throw std::invalid_argument("no heading candidates");
  bool any_allowed = allowed.empty();
  for (std::uint8_t a : allowed) any_allowed = any_allowed || a != 0;
  const auto ok = [&](std::size_t j) {
    return !any_allowed || allowed.empty() || allowed[j] != 0;
  };
  std::size_t best = candidates.size();
  double best_score = 0.0;
  double best_turn = 0.0;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!ok(j)) continue;
    const double score = candidates[j].mi / candidates[j].cost;
    const double turn = std::abs(WrapAngle(candidates[j].heading - current_heading));
    if (best == candidates.size()) {
      best = j;
      best_score = score;
      best_turn = turn;
      continue;
    }
    const double tol = 1e-12 * std::max(std::abs(score), std::abs(best_score));
    if (score > best_score + tol ||
        (std::abs(score - best_score) <= tol && turn < best_turn - 1e-12)) {
      best = j;
      best_score = score;
      best_turn = turn;
    }
  }
  return best;
}

HeadingDecision ChooseHeading(const OccupancyGrid& map, const Pose2& pose,
                              double current_heading, double speed,
                              const LevyParams& levy, const SensorSpec& spec,
                              const PlannerOptions& options, Rng& rng,
                              std::span<const std::uint8_t> allowed) {
  HeadingDecision decision;
  decision.step_length = SampleLevyLength(levy, rng);
  decision.duration = decision.step_length / speed;
  for (double heading : CandidateHeadings(current_heading, options.n_candidates)) {
    CandidateScore c;
    c.heading = heading;
    c.cost = HeadingCost(heading - current_heading, options.phi);
    c.mi = TrajectoryMi(map, pose, heading, speed, decision.duration, spec, options);
    decision.per_candidate.push_back(c);
  }
  const std::size_t best = BestCandidate(decision.per_candidate, current_heading, allowed);
  decision.heading = decision.per_candidate[best].heading;
  decision.score = decision.per_candidate[best].mi / decision.per_candidate[best].cost;
  return decision;
}

double SlwHeading(Rng& rng) {
  return WrapAngle(-kPi + 2.0 * kPi * Uniform01(rng));
}

}  // namespace swarm
