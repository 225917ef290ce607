#ifndef SWARM_ORACLE_H_
#define SWARM_ORACLE_H_

#include <span>

#include "swarm/explore.h"
#include "swarm/sensor.h"

namespace swarm::oracle {

// Mutual information between a beam's cells and its reading, computed from
// the definition: every one of the 2^n occupancy configurations is enumerated
// and sum_c P(c) int P(z|c) log2(P(z|c) / P(z)) dz is integrated with
// composite Simpson on the quadrature window (step halved). n <= 20.
double BruteForceMi(std::span<const double> cell_probs, std::span<const double> cell_dists,
                    const SensorSpec& spec, const Quadrature& quadrature);

}  // namespace swarm::oracle

#endif  // SWARM_ORACLE_H_
