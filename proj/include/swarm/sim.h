#ifndef SWARM_SIM_H_
#define SWARM_SIM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "swarm/common.h"
#include "swarm/consensus.h"
#include "swarm/explore.h"
#include "swarm/grid.h"
#include "swarm/sensor.h"

namespace swarm {

// Ground truth. The outermost ring of cells is always occupied.
struct WorldMap {
  BinaryGrid grid;
  double resolution = 0.1;
  Point2 origin;

  GridGeometry geometry() const { return {grid.width, grid.height, resolution, origin}; }
  double width_m() const { return grid.width * resolution; }
  double height_m() const { return grid.height * resolution; }
  bool occupied(int cell) const { return grid.occupied[cell] != 0; }
  std::optional<int> CellAt(Point2 p) const;
};

// Forces the border occupied; throws IoError when no free cell remains.
WorldMap MakeWorld(BinaryGrid grid, double resolution);
// PGM with intensity < 128 occupied.
WorldMap LoadWorld(const std::string& path, double resolution);

// Generated worlds: "empty" (16 x 16 m), "cave" (16 x 16 m, four obstacles)
// and "two_room" (40 x 30 m, two rooms joined by a door).
WorldMap BuiltinWorld(const std::string& name, double resolution = 0.1);
// Either "builtin:<name>" or a PGM path.
WorldMap ResolveWorld(const std::string& spec, double resolution);

// Free cells plus occupied cells 4-adjacent to a free cell: everything a
// range sensor can observe.
std::vector<std::uint8_t> AccessibleMask(const WorldMap& world);

enum class WalkMode { kIclw, kSlw };

struct ScenarioConfig {
  std::string world = "builtin:cave";
  double resolution = 0.1;
  int n_robots = 5;
  std::vector<Pose2> initial_poses;  // empty: seeded random free placement
  SensorSpec sensor;
  InverseModelParams inverse;
  // l_min / l_max <= 0 select 2 x resolution and the largest world side.
  LevyParams levy{1.5, 0.0, 0.0};
  PlannerOptions planner;
  double speed = 0.4;
  double comm_radius = 2.0;
  double safety_distance = 0.15;
  double collision_cone = kPi / 6.0;  // half-angle checked ahead of the robot
  double dt = 0.1;
  double duration = 60.0;
  double sensor_period = 0.0;   // <= 0: every step
  double metrics_period = 0.0;  // <= 0: every step
  WalkMode mode = WalkMode::kIclw;
  double pose_noise = 0.0;
  double probability_floor = kDefaultProbabilityFloor;
  int max_measurements = 20;
  std::uint64_t seed = 1;

  void Validate() const;
};

ScenarioConfig ScenarioFromJson(const nlohmann::json& doc);
nlohmann::json ScenarioToJson(const ScenarioConfig& config);
ScenarioConfig LoadScenario(const std::string& path);
std::string WalkModeName(WalkMode mode);
WalkMode ParseWalkMode(const std::string& name);

struct RobotState {
  Pose2 pose;  // true pose
  double speed = 0.0;
  double remaining_step = 0.0;
  Rng rng;
  // Latest scan and the heading it was taken at, used for collision checks.
  std::vector<RangeReading> last_scan;
  double scan_heading = 0.0;
};

struct MetricsRecord {
  double t = 0.0;
  std::vector<double> entropy;
  double coverage = 0.0;
  double spread = 0.0;
  std::vector<double> map_error;
};

class Simulator {
 public:
  Simulator(ScenarioConfig config, WorldMap world);

  void Step();
  MetricsRecord Metrics() const;

  const ScenarioConfig& config() const { return config_; }
  const WorldMap& world() const { return world_; }
  const std::vector<RobotState>& robots() const { return robots_; }
  const std::vector<OccupancyGrid>& maps() const { return maps_; }
  double time() const { return step_ * config_.dt; }
  long step_index() const { return step_; }
  int total_steps() const;
  // Cells any robot has stood on.
  const std::vector<std::uint8_t>& visited() const { return visited_; }
  // Re-heading events so far, including obstacle-triggered ones.
  long heading_changes() const { return heading_changes_; }

 private:
  std::vector<RangeReading> Sense(int robot);
  void ChooseNewHeading(int robot);
  bool ObstacleAhead(const RobotState& robot, double heading) const;
  bool Move(int robot);

  ScenarioConfig config_;
  WorldMap world_;
  GridGeometry geometry_;
  std::vector<RobotState> robots_;
  std::vector<OccupancyGrid> maps_;
  InteractionScheduler scheduler_;
  std::vector<std::uint8_t> visited_;
  long step_ = 0;
  long heading_changes_ = 0;
  int sensor_every_ = 1;
};

struct RunResult {
  std::vector<MetricsRecord> metrics;
  std::vector<OccupancyGrid> maps;
  double accessible_coverage = 0.0;  // percent, union over robots
};

// Records at t = 0, then every metrics period, and after the last step.
// `on_record` sees the simulator after each record.
RunResult RunScenario(const ScenarioConfig& config, const WorldMap& world,
                      const std::function<void(const Simulator&, const MetricsRecord&)>&
                          on_record = nullptr);

// Final-state figures used to compare runs.
struct RunSummary {
  double mean_entropy = 0.0;  // bits, averaged over robots
  double coverage = 0.0;      // percent of all cells
  double accessible_coverage = 0.0;
  double spread = 0.0;
  double max_map_error = 0.0;  // percent, worst robot
};
RunSummary Summarize(const RunResult& result);

// Percent of accessible cells explored in at least one map.
double AccessibleCoveragePercent(std::span<const OccupancyGrid> maps,
                                 std::span<const std::uint8_t> accessible);

}  // namespace swarm

#endif  // SWARM_SIM_H_
