#include <cmath>
#include <fstream>
#include <set>

#include "swarm/sim.h"

namespace swarm {

namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!obj.is_object()) throw IoError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw IoError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->template get<T>();
}

}  // namespace

void ScenarioConfig::Validate() const {
  if (n_robots < 1) throw std::invalid_argument("scenario needs at least one robot");
  if (!initial_poses.empty() && static_cast<int>(initial_poses.size()) != n_robots) {
    throw std::invalid_argument("initial_poses must list one pose per robot");
  }
  sensor.Validate();
  inverse.Validate();
  if (!(resolution > 0.0 && speed > 0.0 && dt > 0.0 && comm_radius > 0.0 &&
        safety_distance > 0.0)) {
    throw std::invalid_argument("resolution, speed, dt, comm_radius and safety_distance must be positive");
  }
  if (!(duration >= 0.0)) throw std::invalid_argument("duration must be non-negative");
  if (!(pose_noise >= 0.0)) throw std::invalid_argument("pose_noise must be non-negative");
  if (!(probability_floor > 0.0 && probability_floor < 1.0)) {
    throw std::invalid_argument("probability_floor must lie in (0, 1)");
  }
  if (max_measurements < 0) throw std::invalid_argument("max_measurements must be non-negative");
  if (planner.n_candidates < 1) throw std::invalid_argument("planner needs at least one candidate");
  if (planner.tau_mi < 0.0) throw std::invalid_argument("tau_mi must be non-negative");
}

std::string WalkModeName(WalkMode mode) { return mode == WalkMode::kIclw ? "iclw" : "slw"; }

WalkMode ParseWalkMode(const std::string& name) {
  if (name == "iclw") return WalkMode::kIclw;
  if (name == "slw") return WalkMode::kSlw;
  throw std::invalid_argument("mode must be 'iclw' or 'slw', got '" + name + "'");
}

ScenarioConfig ScenarioFromJson(const json& doc) {
  ScenarioConfig c;
  try {
    RejectUnknownKeys(doc,
                      {"world", "resolution", "robots", "initial_poses", "sensor",
                       "inverse_model", "levy", "planner", "speed", "comm_radius",
                       "safety_distance", "collision_cone", "dt", "duration",
                       "sensor_period", "metrics_period", "mode", "pose_noise",
                       "probability_floor", "max_measurements", "seed"},
                      "scenario");
    Read(doc, "world", c.world);
    Read(doc, "resolution", c.resolution);
    Read(doc, "robots", c.n_robots);
    if (auto it = doc.find("initial_poses"); it != doc.end()) {
      for (const json& p : *it) {
        if (!p.is_array() || p.size() != 3) throw IoError("initial pose must be [x, y, theta]");
        c.initial_poses.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
      }
    }
    if (auto it = doc.find("sensor"); it != doc.end()) {
      RejectUnknownKeys(*it, {"beams", "fov", "s_min", "s_max", "sigma"}, "sensor");
      Read(*it, "beams", c.sensor.n_beams);
      Read(*it, "fov", c.sensor.fov);
      Read(*it, "s_min", c.sensor.s_min);
      Read(*it, "s_max", c.sensor.s_max);
      Read(*it, "sigma", c.sensor.sigma);
    }
    if (auto it = doc.find("inverse_model"); it != doc.end()) {
      RejectUnknownKeys(*it, {"p_f", "p_a", "p_hit"}, "inverse_model");
      Read(*it, "p_f", c.inverse.p_f);
      Read(*it, "p_a", c.inverse.p_a);
      Read(*it, "p_hit", c.inverse.p_hit);
    }
    if (auto it = doc.find("levy"); it != doc.end()) {
      RejectUnknownKeys(*it, {"alpha", "l_min", "l_max"}, "levy");
      Read(*it, "alpha", c.levy.alpha);
      Read(*it, "l_min", c.levy.l_min);
      Read(*it, "l_max", c.levy.l_max);
    }
    if (auto it = doc.find("planner"); it != doc.end()) {
      RejectUnknownKeys(*it,
                        {"tau_mi", "sample_dt", "obstacle_cutoff", "phi", "candidates",
                         "unexplored_prior"},
                        "planner");
      Read(*it, "tau_mi", c.planner.tau_mi);
      Read(*it, "sample_dt", c.planner.sample_dt);
      Read(*it, "obstacle_cutoff", c.planner.obstacle_cutoff);
      Read(*it, "phi", c.planner.phi);
      Read(*it, "candidates", c.planner.n_candidates);
      Read(*it, "unexplored_prior", c.planner.unexplored_prior);
    }
    Read(doc, "speed", c.speed);
    Read(doc, "comm_radius", c.comm_radius);
    Read(doc, "safety_distance", c.safety_distance);
    Read(doc, "collision_cone", c.collision_cone);
    Read(doc, "dt", c.dt);
    Read(doc, "duration", c.duration);
    Read(doc, "sensor_period", c.sensor_period);
    Read(doc, "metrics_period", c.metrics_period);
    if (auto it = doc.find("mode"); it != doc.end()) c.mode = ParseWalkMode(it->get<std::string>());
    Read(doc, "pose_noise", c.pose_noise);
    Read(doc, "probability_floor", c.probability_floor);
    Read(doc, "max_measurements", c.max_measurements);
    Read(doc, "seed", c.seed);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("malformed scenario: ") + e.what());
  }
  return c;
}

json ScenarioToJson(const ScenarioConfig& c) {
  json poses = json::array();
  for (const Pose2& p : c.initial_poses) poses.push_back({p.x, p.y, p.theta});
  return {
      {"world", c.world},
      {"resolution", c.resolution},
      {"robots", c.n_robots},
      {"initial_poses", poses},
      {"sensor",
       {{"beams", c.sensor.n_beams},
        {"fov", c.sensor.fov},
        {"s_min", c.sensor.s_min},
        {"s_max", c.sensor.s_max},
        {"sigma", c.sensor.sigma}}},
      {"inverse_model", {{"p_f", c.inverse.p_f}, {"p_a", c.inverse.p_a}, {"p_hit", c.inverse.p_hit}}},
      {"levy", {{"alpha", c.levy.alpha}, {"l_min", c.levy.l_min}, {"l_max", c.levy.l_max}}},
      {"planner",
       {{"tau_mi", c.planner.tau_mi},
        {"sample_dt", c.planner.sample_dt},
        {"obstacle_cutoff", c.planner.obstacle_cutoff},
        {"phi", c.planner.phi},
        {"candidates", c.planner.n_candidates},
        {"unexplored_prior", c.planner.unexplored_prior}}},
      {"speed", c.speed},
      {"comm_radius", c.comm_radius},
      {"safety_distance", c.safety_distance},
      {"collision_cone", c.collision_cone},
      {"dt", c.dt},
      {"duration", c.duration},
      {"sensor_period", c.sensor_period},
      {"metrics_period", c.metrics_period},
      {"mode", WalkModeName(c.mode)},
      {"pose_noise", c.pose_noise},
      {"probability_floor", c.probability_floor},
      {"max_measurements", c.max_measurements},
      {"seed", c.seed},
  };
}

ScenarioConfig LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return ScenarioFromJson(doc);
}

}  // namespace swarm
