#ifndef SWARM_TOOLS_COMMANDS_H_
#define SWARM_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

namespace swarm::cli {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kCheckFailed = 3 };

struct SimulateArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> mode;
  double snapshot_every = 0.0;
  bool threshold = false;
};

struct ThresholdArgs {
  std::string map;
  std::string out;
  int phi_max = 250;
};

struct ConsensusDemoArgs {
  int robots = 5;
  std::string schedule = "ring";
  int steps = 200;
  int cells = 16;
  int factor_steps = 20;
  std::uint64_t seed = 1;
  std::string out;
};

struct MiCheckArgs {
  int cells = 6;
  int trials = 200;
  std::uint64_t seed = 1;
  double sigma_min = 0.02;
  double sigma_max = 0.2;
  std::string out;
};

struct CompareArgs {
  std::string scenario;
  int seeds = 10;
  std::uint64_t first_seed = 1;
  std::string out;
};

int RunSimulate(const SimulateArgs& args);
int RunThreshold(const ThresholdArgs& args);
int RunConsensusDemo(const ConsensusDemoArgs& args);
int RunMiCheck(const MiCheckArgs& args);
int RunCompare(const CompareArgs& args);

}  // namespace swarm::cli

#endif  // SWARM_TOOLS_COMMANDS_H_
