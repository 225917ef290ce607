#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <fmt/core.h>

#include "json.hpp"
#include "swarm/consensus.h"
#include "swarm/csv.h"
#include "swarm/explore.h"
#include "swarm/oracle.h"
#include "swarm/sim.h"
#include "swarm/tda.h"

namespace swarm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void WriteJson(const fs::path& path, const json& doc) {
  auto out = OpenOut(path);
  out << doc.dump(2) << '\n';
}

json Manifest(const std::string& command, json arguments, const std::vector<std::string>& outputs) {
  return {{"command", command},
          {"version", SWARM_GRIDMAP_VERSION},
          {"arguments", std::move(arguments)},
          {"outputs", outputs}};
}

// A scenario file, or the manifest of an earlier simulate run.
ScenarioConfig LoadScenarioOrManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("command") && doc.contains("arguments")) {
    const json& args = doc["arguments"];
    if (doc["command"] != "simulate" || !args.contains("scenario")) {
      throw IoError(path + ": manifest is not from a simulate run");
    }
    return ScenarioFromJson(args["scenario"]);
  }
  return ScenarioFromJson(doc);
}

int ThreadCount() {
  int n = 0;
  if (const char* env = std::getenv("SWARM_GRIDMAP_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

template <typename Fn>
void ParallelFor(int count, Fn&& fn) {
  const int workers = std::min(ThreadCount(), std::max(1, count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string Fixed(double value) { return fmt::format("{:.1f}", value); }

}  // namespace

int RunSimulate(const SimulateArgs& args) {
  ScenarioConfig config = LoadScenarioOrManifest(args.scenario);
  if (args.seed) config.seed = *args.seed;
  if (args.mode) config.mode = ParseWalkMode(*args.mode);
  config.Validate();
  // Everything that can fail on bad input happens before the output
  // directory is touched.
  Simulator sim(config, ResolveWorld(config.world, config.resolution));

  const fs::path out(args.out);
  MakeDir(out);
  std::vector<std::string> outputs{"metrics.csv"};
  auto metrics = OpenOut(out / "metrics.csv");
  csv::WriteRow(metrics, {"t", "robot", "entropy", "coverage", "spread", "map_error"});
  const auto record = [&] {
    const MetricsRecord r = sim.Metrics();
    for (std::size_t i = 0; i < r.entropy.size(); ++i) {
      csv::WriteRow(metrics, {csv::FormatDouble(r.t), std::to_string(i),
                              csv::FormatDouble(r.entropy[i]), csv::FormatDouble(r.coverage),
                              csv::FormatDouble(r.spread), csv::FormatDouble(r.map_error[i])});
    }
  };
  const auto snapshot = [&] {
    MakeDir(out / "snapshots");
    for (std::size_t i = 0; i < sim.maps().size(); ++i) {
      const std::string name =
          fmt::format("snapshots/robot_{}_t{}.pgm", i, Fixed(sim.time()));
      WritePgm((out / name).string(), ToPixels(sim.maps()[i]));
      outputs.push_back(name);
    }
  };

  const int steps = sim.total_steps();
  const auto every = [&](double period) {
    return period > 0.0 ? std::max(1, static_cast<int>(std::lround(period / config.dt))) : 0;
  };
  const int metrics_every = std::max(1, every(config.metrics_period));
  const int snapshot_every = every(args.snapshot_every);
  record();
  if (snapshot_every) snapshot();
  for (int k = 1; k <= steps; ++k) {
    sim.Step();
    if (k % metrics_every == 0 || k == steps) record();
    if (snapshot_every && k % snapshot_every == 0) snapshot();
  }
  metrics.close();

  for (std::size_t i = 0; i < sim.maps().size(); ++i) {
    const std::string name = fmt::format("robot_{}.pgm", i);
    WritePgm((out / name).string(), ToPixels(sim.maps()[i]));
    outputs.push_back(name);
    if (args.threshold) {
      const OccupancyGrid& map = sim.maps()[i];
      const Barcode barcode = ComputePersistence(CubicalComplex(ToPixels(map)));
      const ThresholdResult result = ThresholdMap(map, barcode);
      const std::string bc = fmt::format("barcode_robot_{}.csv", i);
      auto f = OpenOut(out / bc);
      WriteBarcodeCsv(f, barcode);
      const std::string bin = fmt::format("binary_robot_{}.pgm", i);
      WritePgm((out / bin).string(), OccupancyToPixels(result.map));
      outputs.push_back(bc);
      outputs.push_back(bin);
    }
  }
  const MetricsRecord last = sim.Metrics();
  WriteJson(out / "manifest.json",
            Manifest("simulate",
                     {{"scenario", ScenarioToJson(config)},
                      {"snapshot_every", args.snapshot_every},
                      {"threshold", args.threshold}},
                     outputs));
  std::cout << fmt::format("simulated {} s, {} robots: coverage {:.2f}%, spread {:.4f}\n",
                           sim.time(), config.n_robots, last.coverage, last.spread);
  return kOk;
}

int RunThreshold(const ThresholdArgs& args) {
  const PixelGrid pixels = ReadPgm(args.map);
  OccupancyGrid grid(pixels.width, pixels.height, 1.0, Point2{}, 1e-9);
  for (int c = 0; c < grid.size(); ++c) {
    // 255 is how unexplored cells are exported; both classify as occupied.
    if (pixels.intensity[c] < 255) grid.SetProbability(c, pixels.intensity[c] / 255.0);
  }
  const Barcode barcode = ComputePersistence(CubicalComplex(pixels));
  const ThresholdResult result = ThresholdMap(grid, barcode, args.phi_max);

  const fs::path out(args.out);
  MakeDir(out);
  {
    auto f = OpenOut(out / "barcode.csv");
    WriteBarcodeCsv(f, barcode);
  }
  WritePgm((out / "binary.pgm").string(), OccupancyToPixels(result.map));
  int persistent[2] = {0, 0};
  int finite[2] = {0, 0};
  for (const PersistenceInterval& iv : barcode.intervals) {
    (IsPersistent(iv, args.phi_max) ? persistent : finite)[iv.dim] += 1;
  }
  const json report = {{"threshold", result.threshold},
                       {"probability_cut", result.threshold / 255.0},
                       {"free_cut", result.free_cut},
                       {"phi_max", args.phi_max},
                       {"persistent_h0", persistent[0]},
                       {"persistent_h1", persistent[1]},
                       {"terminating_h0", finite[0]},
                       {"terminating_h1", finite[1]}};
  WriteJson(out / "report.json", report);
  WriteJson(out / "manifest.json",
            Manifest("threshold", {{"map", args.map}, {"phi_max", args.phi_max}},
                     {"barcode.csv", "binary.pgm", "report.json"}));
  std::cout << report.dump() << '\n';
  return kOk;
}

int RunConsensusDemo(const ConsensusDemoArgs& args) {
  ConsensusDemoConfig config;
  config.n_robots = args.robots;
  config.n_cells = args.cells;
  config.steps = args.steps;
  config.factor_steps = args.factor_steps;
  config.seed = args.seed;
  if (args.schedule != "ring") {
    std::ifstream in(args.schedule);
    if (!in) throw IoError("cannot open schedule " + args.schedule);
    try {
      const json doc = json::parse(in);
      for (const json& step : doc.at("steps")) {
        EdgeList edges;
        for (const json& e : step) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        config.schedule.push_back(std::move(edges));
      }
    } catch (const json::exception& e) {
      throw IoError(args.schedule + ": " + e.what());
    }
    if (config.schedule.empty()) throw IoError(args.schedule + ": schedule has no steps");
    try {
      for (const EdgeList& edges : config.schedule) NeighborsFromEdges(args.robots, edges);
    } catch (const std::invalid_argument& e) {
      throw IoError(args.schedule + ": " + e.what());
    }
  }
  const ConsensusDemoResult result = swarm::RunConsensusDemo(config);

  const fs::path out(args.out);
  MakeDir(out);
  {
    auto f = OpenOut(out / "consensus.csv");
    csv::WriteRow(f, {"step", "robot", "cell", "probability", "predicted_limit", "abs_error"});
    for (const ConsensusDemoRow& r : result.rows) {
      csv::WriteRow(f, {std::to_string(r.step), std::to_string(r.robot), std::to_string(r.cell),
                        csv::FormatDouble(r.probability), csv::FormatDouble(r.predicted_limit),
                        csv::FormatDouble(r.abs_error)});
    }
  }
  const bool converged = result.final_max_error < 1e-6;
  const json summary = {
      {"final_max_error", result.final_max_error},
      {"converged", converged},
      {"connected", result.connected},
      {"clamped", result.clamped},
      {"rate_slope", std::isinf(result.rate.slope) ? json("-inf") : json(result.rate.slope)},
      {"rate_r_squared", result.rate.r_squared},
      {"rate_points", result.rate.points}};
  WriteJson(out / "summary.json", summary);
  WriteJson(out / "manifest.json",
            Manifest("consensus-demo",
                     {{"robots", args.robots},
                      {"schedule", args.schedule},
                      {"steps", args.steps},
                      {"cells", args.cells},
                      {"factor_steps", args.factor_steps},
                      {"seed", args.seed}},
                     {"consensus.csv", "summary.json"}));
  std::cout << summary.dump() << '\n';
  if (!result.connected) {
    std::cerr << "warning: the schedule's communication graph is never connected\n";
    return kCheckFailed;
  }
  return converged ? kOk : kCheckFailed;
}

int RunMiCheck(const MiCheckArgs& args) {
  if (args.sigma_min > args.sigma_max) throw IoError("sigma-min exceeds sigma-max");
  Rng rng(args.seed);
  double worst = 0.0;
  int skipped = 0;
  std::vector<std::vector<std::string>> rows;
  for (int t = 0; t < args.trials; ++t) {
    const int n = args.cells == 0
                      ? 0
                      : 1 + std::min(args.cells - 1, static_cast<int>(Uniform01(rng) * args.cells));
    SensorSpec spec;
    spec.sigma = args.sigma_min + (args.sigma_max - args.sigma_min) * Uniform01(rng);
    std::vector<double> probs(n);
    std::vector<double> dists(n);
    double d = 0.5 * Uniform01(rng);
    for (int p = 0; p < n; ++p) {
      probs[p] = Uniform01(rng);
      dists[p] = d;
      d += 0.05 + 0.45 * Uniform01(rng);
    }
    // The quadrature step collapses with sigma; such beams are not checked.
    if (spec.sigma < 1e-4) {
      ++skipped;
      continue;
    }
    const Quadrature q = Quadrature::Extended(spec);
    const double closed = BeamMi(probs, dists, spec, q);
    const double brute = oracle::BruteForceMi(probs, dists, spec, q);
    const double diff = std::abs(closed - brute);
    worst = std::max(worst, diff);
    rows.push_back({std::to_string(t), std::to_string(n), csv::FormatDouble(spec.sigma),
                    csv::FormatDouble(closed), csv::FormatDouble(brute), csv::FormatDouble(diff)});
  }
  const bool pass = worst < 1e-4;
  if (!args.out.empty()) {
    const fs::path out(args.out);
    MakeDir(out);
    auto f = OpenOut(out / "mi_check.csv");
    csv::WriteRow(f, {"trial", "cells", "sigma", "closed_form", "brute_force", "abs_diff"});
    for (const auto& r : rows) csv::WriteRow(f, r);
    WriteJson(out / "manifest.json",
              Manifest("mi-check",
                       {{"cells", args.cells},
                        {"trials", args.trials},
                        {"seed", args.seed},
                        {"sigma_min", args.sigma_min},
                        {"sigma_max", args.sigma_max}},
                       {"mi_check.csv"}));
  }
  std::cout << fmt::format("checked {} beams, skipped {}, max abs deviation {:.3e}: {}\n",
                           rows.size(), skipped, worst, pass ? "pass" : "FAIL");
  return pass ? kOk : kCheckFailed;
}

int RunCompare(const CompareArgs& args) {
  const ScenarioConfig base = LoadScenario(args.scenario);
  base.Validate();
  const WorldMap world = ResolveWorld(base.world, base.resolution);

  const int n_runs = 2 * args.seeds;
  std::vector<RunSummary> summaries(n_runs);
  ParallelFor(n_runs, [&](int k) {
    ScenarioConfig config = base;
    config.seed = args.first_seed + static_cast<std::uint64_t>(k / 2);
    config.mode = k % 2 == 0 ? WalkMode::kIclw : WalkMode::kSlw;
    if (config.metrics_period <= 0.0) config.metrics_period = config.duration;
    summaries[k] = Summarize(RunScenario(config, world));
  });

  const fs::path out(args.out);
  MakeDir(out);
  auto f = OpenOut(out / "compare.csv");
  csv::WriteRow(f, {"seed", "mode", "mean_entropy", "coverage", "accessible_coverage", "spread",
                    "max_map_error"});
  std::vector<double> entropy[2];
  std::vector<double> coverage[2];
  for (int k = 0; k < n_runs; ++k) {
    const RunSummary& s = summaries[k];
    const WalkMode mode = k % 2 == 0 ? WalkMode::kIclw : WalkMode::kSlw;
    csv::WriteRow(f, {std::to_string(args.first_seed + k / 2), WalkModeName(mode),
                      csv::FormatDouble(s.mean_entropy), csv::FormatDouble(s.coverage),
                      csv::FormatDouble(s.accessible_coverage), csv::FormatDouble(s.spread),
                      csv::FormatDouble(s.max_map_error)});
    entropy[k % 2].push_back(s.mean_entropy);
    coverage[k % 2].push_back(s.accessible_coverage);
  }
  const json summary = {{"median_entropy_iclw", Median(entropy[0])},
                        {"median_entropy_slw", Median(entropy[1])},
                        {"median_accessible_coverage_iclw", Median(coverage[0])},
                        {"median_accessible_coverage_slw", Median(coverage[1])}};
  WriteJson(out / "summary.json", summary);
  WriteJson(out / "manifest.json",
            Manifest("compare",
                     {{"scenario", ScenarioToJson(base)},
                      {"seeds", args.seeds},
                      {"first_seed", args.first_seed}},
                     {"compare.csv", "summary.json"}));
  std::cout << summary.dump() << '\n';
  return kOk;
}

}  // namespace swarm::cli
