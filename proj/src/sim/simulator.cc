#include <algorithm>
#include <cmath>

#include "swarm/sim.h"

namespace swarm {

namespace {

constexpr std::uint64_t kPlacementStream = 1000003;

bool FreeNeighborhood(const WorldMap& world, int cell) {
  const int w = world.grid.width;
  const int x = cell % w;
  const int y = cell / w;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const int nx = x + dx;
      const int ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= w || ny >= world.grid.height) return false;
      if (world.grid.at(nx, ny)) return false;
    }
  }
  return true;
}

LevyParams ResolveLevy(const ScenarioConfig& config, const WorldMap& world) {
  LevyParams levy = config.levy;
  if (levy.l_min <= 0.0) levy.l_min = 2.0 * config.resolution;
  if (levy.l_max <= 0.0) levy.l_max = std::max(world.width_m(), world.height_m());
  levy.Validate();
  return levy;
}

}  // namespace

Simulator::Simulator(ScenarioConfig config, WorldMap world)
    : config_(std::move(config)),
      world_(std::move(world)),
      geometry_(world_.geometry()),
      scheduler_(config_.n_robots) {
  config_.Validate();
  if (std::abs(world_.resolution - config_.resolution) > 1e-12) {
    throw std::invalid_argument("world resolution differs from scenario resolution");
  }
  config_.levy = ResolveLevy(config_, world_);
  sensor_every_ = config_.sensor_period > 0.0
                      ? std::max(1, static_cast<int>(std::lround(config_.sensor_period / config_.dt)))
                      : 1;
  visited_.assign(world_.grid.occupied.size(), 0);

  Rng placement(DeriveSeed(config_.seed, kPlacementStream));
  std::vector<int> free_cells;
  for (int c = 0; c < geometry_.size(); ++c) {
    if (FreeNeighborhood(world_, c)) free_cells.push_back(c);
  }
  std::vector<int> taken;
  for (int i = 0; i < config_.n_robots; ++i) {
    RobotState robot;
    robot.rng.seed(DeriveSeed(config_.seed, static_cast<std::uint64_t>(i)));
    robot.speed = config_.speed;
    if (!config_.initial_poses.empty()) {
      robot.pose = config_.initial_poses[i];
      const auto cell = world_.CellAt({robot.pose.x, robot.pose.y});
      if (!cell || world_.occupied(*cell)) {
        throw std::invalid_argument("robot " + std::to_string(i) + " starts in an occupied cell");
      }
    } else {
      if (free_cells.size() <= taken.size()) {
        throw std::invalid_argument("not enough free space to place the robots");
      }
      int cell;
      do {
        cell = free_cells[static_cast<std::size_t>(Uniform01(placement) * free_cells.size())];
      } while (std::find(taken.begin(), taken.end(), cell) != taken.end());
      taken.push_back(cell);
      const int w = geometry_.width;
      robot.pose = {(cell % w + 0.5) * config_.resolution + world_.origin.x,
                    (cell / w + 0.5) * config_.resolution + world_.origin.y,
                    SlwHeading(placement)};
    }
    robot.scan_heading = robot.pose.theta;
    visited_[*world_.CellAt({robot.pose.x, robot.pose.y})] = 1;
    robots_.push_back(std::move(robot));
    maps_.emplace_back(geometry_.width, geometry_.height, config_.resolution, world_.origin,
                       config_.probability_floor);
  }
}

int Simulator::total_steps() const {
  return static_cast<int>(std::ceil(config_.duration / config_.dt - 1e-9));
}

std::vector<RangeReading> Simulator::Sense(int i) {
  RobotState& robot = robots_[i];
  std::vector<int> others;
  for (int j = 0; j < static_cast<int>(robots_.size()); ++j) {
    if (j == i) continue;
    const int cell = *world_.CellAt({robots_[j].pose.x, robots_[j].pose.y});
    if (cell != *world_.CellAt({robot.pose.x, robot.pose.y})) others.push_back(cell);
  }
  std::vector<RangeReading> scan;
  scan.reserve(config_.sensor.n_beams);
  for (int a = 0; a < config_.sensor.n_beams; ++a) {
    const double angle = config_.sensor.BeamAngle(a);
    const BeamTrace trace =
        CastBeam(geometry_, world_.grid, robot.pose, angle, config_.sensor, others);
    scan.push_back({angle, SimulateMeasurement(trace.hit_distance, config_.sensor, robot.rng)});
  }
  robot.last_scan = scan;
  robot.scan_heading = robot.pose.theta;
  return scan;
}

bool Simulator::ObstacleAhead(const RobotState& robot, double heading) const {
  const double reach = config_.safety_distance + robot.speed * config_.dt;
  for (const RangeReading& r : robot.last_scan) {
    const double off = WrapAngle(robot.scan_heading + r.beam_angle - heading);
    if (std::abs(off) <= config_.collision_cone && r.z < reach) return true;
  }
  return false;
}

void Simulator::ChooseNewHeading(int i) {
  RobotState& robot = robots_[i];
  ++heading_changes_;
  if (config_.mode == WalkMode::kIclw) {
    const std::vector<double> candidates =
        CandidateHeadings(robot.pose.theta, config_.planner.n_candidates);
    std::vector<std::uint8_t> allowed(candidates.size());
    bool any = false;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      allowed[j] = ObstacleAhead(robot, candidates[j]) ? 0 : 1;
      any = any || allowed[j];
    }
    if (!any) {
      robot.pose.theta = WrapAngle(robot.pose.theta + kPi);
      robot.remaining_step = SampleLevyLength(config_.levy, robot.rng);
      return;
    }
    const HeadingDecision decision =
        ChooseHeading(maps_[i], robot.pose, robot.pose.theta, robot.speed, config_.levy,
                      config_.sensor, config_.planner, robot.rng, allowed);
    robot.pose.theta = decision.heading;
    robot.remaining_step = decision.step_length;
    return;
  }
  double heading = SlwHeading(robot.rng);
  for (int attempt = 0; attempt < 16 && ObstacleAhead(robot, heading); ++attempt) {
    heading = SlwHeading(robot.rng);
  }
  robot.pose.theta = heading;
  robot.remaining_step = SampleLevyLength(config_.levy, robot.rng);
}

bool Simulator::Move(int i) {
  RobotState& robot = robots_[i];
  const double distance = robot.speed * config_.dt;
  bool blocked = false;
  double covered = 0.0;
  TraverseRay(geometry_, {robot.pose.x, robot.pose.y}, robot.pose.theta, distance,
              [&](int cell, double t0, double t1) {
                if (t0 > distance) return false;
                if (world_.occupied(cell)) {
                  blocked = true;
                  return false;
                }
                covered = t1;
                return true;
              });
  if (blocked || covered < distance) return false;
  const Point2 next{robot.pose.x + distance * std::cos(robot.pose.theta),
                    robot.pose.y + distance * std::sin(robot.pose.theta)};
  const auto cell = world_.CellAt(next);
  if (!cell || world_.occupied(*cell)) return false;
  robot.pose.x = next.x;
  robot.pose.y = next.y;
  robot.remaining_step -= distance;
  visited_[*cell] = 1;
  return true;
}

void Simulator::Step() {
  const int n = static_cast<int>(robots_.size());
  const bool sensing = step_ % sensor_every_ == 0;

  // Sense and measurement update factors.
  std::vector<std::vector<CellFactor>> factors(n);
  if (sensing) {
    for (int i = 0; i < n; ++i) {
      const std::vector<RangeReading> scan = Sense(i);
      Pose2 mapping_pose = robots_[i].pose;
      if (config_.pose_noise > 0.0) {
        mapping_pose.x += config_.pose_noise * StandardNormal(robots_[i].rng);
        mapping_pose.y += config_.pose_noise * StandardNormal(robots_[i].rng);
      }
      OccupancyGrid& map = maps_[i];
      for (const CellFactor& f : ComputeUpdateFactors(geometry_, mapping_pose, scan,
                                                      config_.sensor, config_.inverse)) {
        if (map.update_count(f.cell) >= config_.max_measurements) continue;
        map.IncrementUpdateCount(f.cell);
        factors[i].push_back(f);
      }
    }
  }

  // Communication graph and pairwise fusion.
  std::vector<std::vector<int>> neighbors(n);
  const double r2 = config_.comm_radius * config_.comm_radius;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = robots_[i].pose.x - robots_[j].pose.x;
      const double dy = robots_[i].pose.y - robots_[j].pose.y;
      if (dx * dx + dy * dy <= r2) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
      }
    }
  }
  scheduler_.Observe(neighbors);
  FusionRound(maps_, scheduler_.Dequeue(), factors);

  // Motion.
  for (int i = 0; i < n; ++i) {
    RobotState& robot = robots_[i];
    if (robot.remaining_step <= 0.0 || ObstacleAhead(robot, robot.pose.theta)) {
      ChooseNewHeading(i);
    }
    if (!Move(i)) ChooseNewHeading(i);
  }
  ++step_;
}

MetricsRecord Simulator::Metrics() const {
  MetricsRecord record;
  record.t = time();
  std::vector<const OccupancyGrid*> grids;
  for (const OccupancyGrid& m : maps_) {
    grids.push_back(&m);
    record.entropy.push_back(MapEntropy(m));
    record.map_error.push_back(MapErrorPercent(m, world_.grid));
  }
  record.coverage = CoveragePercent(grids);
  record.spread = grids.size() >= 2 ? ConsensusSpread(grids) : 0.0;
  return record;
}

double AccessibleCoveragePercent(std::span<const OccupancyGrid> maps,
                                 std::span<const std::uint8_t> accessible) {
  if (maps.empty()) throw std::invalid_argument("coverage needs at least one map");
  long total = 0;
  long covered = 0;
  for (std::size_t c = 0; c < accessible.size(); ++c) {
    if (!accessible[c]) continue;
    ++total;
    for (const OccupancyGrid& m : maps) {
      if (m.explored(static_cast<int>(c))) {
        ++covered;
        break;
      }
    }
  }
  return total > 0 ? 100.0 * covered / total : 0.0;
}

RunResult RunScenario(const ScenarioConfig& config, const WorldMap& world,
                      const std::function<void(const Simulator&, const MetricsRecord&)>& on_record) {
  Simulator sim(config, world);
  const int steps = sim.total_steps();
  const int every = config.metrics_period > 0.0
                        ? std::max(1, static_cast<int>(std::lround(config.metrics_period / config.dt)))
                        : 1;
  RunResult result;
  const auto record = [&] {
    result.metrics.push_back(sim.Metrics());
    if (on_record) on_record(sim, result.metrics.back());
  };
  record();
  for (int k = 1; k <= steps; ++k) {
    sim.Step();
    if (k % every == 0 || k == steps) record();
  }
  result.maps = sim.maps();
  result.accessible_coverage = AccessibleCoveragePercent(result.maps, AccessibleMask(sim.world()));
  return result;
}

RunSummary Summarize(const RunResult& result) {
  if (result.metrics.empty()) throw std::invalid_argument("run has no metrics");
  const MetricsRecord& last = result.metrics.back();
  RunSummary summary;
  for (double e : last.entropy) summary.mean_entropy += e;
  summary.mean_entropy /= static_cast<double>(last.entropy.size());
  summary.coverage = last.coverage;
  summary.accessible_coverage = result.accessible_coverage;
  summary.spread = last.spread;
  summary.max_map_error = *std::max_element(last.map_error.begin(), last.map_error.end());
  return summary;
}

}  // namespace swarm
