#ifndef SWARM_EXPLORE_H_
#define SWARM_EXPLORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarm/common.h"
#include "swarm/grid.h"
#include "swarm/sensor.h"

namespace swarm {

// Truncated power-law step lengths, density ~ l^-alpha on [l_min, l_max].
struct LevyParams {
  double alpha = 1.5;
  double l_min = 0.2;
  double l_max = 16.0;

  void Validate() const;
};

// Inverse CDF at u in [0, 1].
double LevyLengthFromUniform(const LevyParams& params, double u);
double SampleLevyLength(const LevyParams& params, Rng& rng);

// Trapezoid rule over [z_lo, z_hi] with spacing at most `step`.
struct Quadrature {
  double z_lo = 0.0;
  double z_hi = 0.0;
  double step = 0.0;

  // [-4 sigma, s_max + 4 sigma], step sigma / 4. Near-range readings are
  // centered on 0, so the window extends below it.
  static Quadrature Default(const SensorSpec& spec);
  // [-8 sigma, s_max + 8 sigma], step sigma / 4. Wide enough that no mixture
  // component is truncated.
  static Quadrature Extended(const SensorSpec& spec);
};

// Additive constant K = -log2(sqrt(2 pi) sigma) - 0.5 log2(e).
double MiConstant(double sigma);

// Mutual information in bits between the map cells along a beam and the
// beam's range reading: -int P(z) log2 P(z) dz + K.
double BeamMi(std::span<const double> cell_probs, std::span<const double> cell_dists,
              const SensorSpec& spec, std::optional<Quadrature> quadrature = std::nullopt);

struct CandidateBeam {
  int pose_index = 0;
  double angle = 0.0;  // absolute beam direction
  double mi = 0.0;
};

// Indices of the beams kept by the greedy rule: mi > tau_mi, and per pose
// sample at most one beam (the most informative, earliest on ties) per
// angular bin of width `bin_width`.
std::vector<std::size_t> SelectBeams(std::span<const CandidateBeam> beams,
                                     double tau_mi, double bin_width);

struct PlannerOptions {
  double tau_mi = 0.01;
  // Rollout pose spacing in seconds; <= 0 selects 2 s_max / (3 speed).
  double sample_dt = 0.0;
  // Explored cells above this probability stop a rollout.
  double obstacle_cutoff = 0.95;
  double phi = kPi / 72.0;
  int n_candidates = 8;
  // Probability assumed for unexplored cells when scoring beams.
  double unexplored_prior = 0.5;

  double EffectiveSampleDt(const SensorSpec& spec, double speed) const;
};

// Sum of BeamMi over the selected beams of the poses along a straight
// rollout from `pose` at `heading`.
double TrajectoryMi(const OccupancyGrid& map, const Pose2& pose, double heading,
                    double speed, double duration, const SensorSpec& spec,
                    const PlannerOptions& options);

// C = 2 sin(|dtheta| / 2) + phi.
double HeadingCost(double dtheta, double phi);

// current_heading + 2 pi j / n, wrapped.
std::vector<double> CandidateHeadings(double current_heading, int n_candidates);

struct CandidateScore {
  double heading = 0.0;
  double mi = 0.0;
  double cost = 0.0;
};

struct HeadingDecision {
  double heading = 0.0;
  double step_length = 0.0;
  double duration = 0.0;
  double score = 0.0;
  std::vector<CandidateScore> per_candidate;
};

// Index maximizing mi / cost; ties go to the smallest |dtheta| and then the
// lowest index. Entries with allowed[j] == 0 are skipped unless none remain.
std::size_t BestCandidate(std::span<const CandidateScore> candidates,
                          double current_heading,
                          std::span<const std::uint8_t> allowed = {});

HeadingDecision ChooseHeading(const OccupancyGrid& map, const Pose2& pose,
                              double current_heading, double speed,
                              const LevyParams& levy, const SensorSpec& spec,
                              const PlannerOptions& options, Rng& rng,
                              std::span<const std::uint8_t> allowed = {});

// Uniform heading on [-pi, pi).
double SlwHeading(Rng& rng);

}  // namespace swarm

#endif  // SWARM_EXPLORE_H_
