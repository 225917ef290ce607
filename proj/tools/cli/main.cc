#include <iostream>

#include <CLI11.hpp>

#include "commands.h"
#include "swarm/common.h"

int main(int argc, char** argv) {
  using namespace swarm::cli;
  CLI::App app{"Swarm occupancy-grid mapping simulator"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", SWARM_GRIDMAP_VERSION);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write metrics and maps");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON (or a simulate manifest)")
      ->required();
  simulate->add_option("--seed", sim.seed, "Override the scenario seed");
  simulate->add_option("--out", sim.out, "Output directory")->required();
  simulate->add_option("--mode", sim.mode, "iclw or slw")
      ->check(CLI::IsMember({"iclw", "slw"}));
  simulate->add_option("--snapshot-every", sim.snapshot_every,
                       "Seconds between per-robot map snapshots (0 = final only)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_flag("--threshold", sim.threshold, "Also write final barcodes and binary maps");

  ThresholdArgs thr;
  auto* threshold = app.add_subcommand("threshold", "Adaptive persistent-homology threshold");
  threshold->add_option("--map", thr.map, "Occupancy map PGM")->required();
  threshold->add_option("--out", thr.out, "Output directory")->required();
  threshold->add_option("--phi-max", thr.phi_max, "Upper end of the filtration range")
      ->check(CLI::Range(0, 255));

  ConsensusDemoArgs demo;
  auto* consensus = app.add_subcommand("consensus-demo", "Scripted consensus convergence check");
  consensus->add_option("--robots", demo.robots, "Number of robots")->check(CLI::PositiveNumber);
  consensus->add_option("--schedule", demo.schedule, "'ring' or a schedule JSON file");
  consensus->add_option("--steps", demo.steps, "Protocol steps")->check(CLI::NonNegativeNumber);
  consensus->add_option("--cells", demo.cells, "Cells per map")->check(CLI::PositiveNumber);
  consensus->add_option("--factor-steps", demo.factor_steps,
                        "Steps carrying scripted measurement factors")
      ->check(CLI::NonNegativeNumber);
  consensus->add_option("--seed", demo.seed, "Random seed");
  consensus->add_option("--out", demo.out, "Output directory")->required();

  MiCheckArgs mi;
  auto* mi_check = app.add_subcommand("mi-check", "Closed-form vs brute-force beam information");
  mi_check->add_option("--cells", mi.cells, "Maximum cells per beam")->check(CLI::Range(0, 6));
  mi_check->add_option("--trials", mi.trials, "Random beams")->check(CLI::NonNegativeNumber);
  mi_check->add_option("--seed", mi.seed, "Random seed");
  mi_check->add_option("--sigma-min", mi.sigma_min, "Smallest sensor sigma")
      ->check(CLI::PositiveNumber);
  mi_check->add_option("--sigma-max", mi.sigma_max, "Largest sensor sigma")
      ->check(CLI::PositiveNumber);
  mi_check->add_option("--out", mi.out, "Optional output directory");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "ICLW vs SLW over paired seeds");
  compare->add_option("--scenario", cmp.scenario, "Scenario JSON")->required();
  compare->add_option("--seeds", cmp.seeds, "Number of seeds")->check(CLI::PositiveNumber);
  compare->add_option("--first-seed", cmp.first_seed, "First seed");
  compare->add_option("--out", cmp.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return RunSimulate(sim);
    if (*threshold) return RunThreshold(thr);
    if (*consensus) return RunConsensusDemo(demo);
    if (*mi_check) return RunMiCheck(mi);
    if (*compare) return RunCompare(cmp);
  } catch (const swarm::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
