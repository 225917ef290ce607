// Writes the generated worlds as PGM files, e.g. into data/worlds.
#include <filesystem>
#include <iostream>
#include <string>

#include "swarm/sim.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_worlds OUT_DIR\n";
    return 1;
  }
  const std::string dir = argv[1];
  try {
    std::filesystem::create_directories(dir);
    for (const char* name : {"empty", "cave", "two_room"}) {
      const swarm::WorldMap world = swarm::BuiltinWorld(name);
      swarm::WritePgm(dir + "/" + name + ".pgm", swarm::OccupancyToPixels(world.grid));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
