#ifndef SWARM_COMMON_H_
#define SWARM_COMMON_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace swarm {

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Wraps an angle into [-pi, pi).
double WrapAngle(double angle);

// Raised for malformed files and unreadable/unwritable paths. Plain
// precondition violations use std::invalid_argument.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The engine's output sequence is fixed by the standard; the distributions
// below are implemented here rather than taken from <random> so that seeded
// runs are bit-identical across standard library implementations.
using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
double Uniform01(Rng& rng);

// Standard normal via Box-Muller; consumes two draws per call.
double StandardNormal(Rng& rng);

// SplitMix64 mix of (master, stream); used to give every robot its own
// independent generator fixed at initialization.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream);

}  // namespace swarm

#endif  // SWARM_COMMON_H_
