#include <algorithm>
#include <cmath>

#include "swarm/explore.h"

namespace swarm {

void LevyParams::Validate() const {
  if (!(alpha > 1.0 && alpha < 3.0)) {
    throw std::invalid_argument("Levy exponent must lie in (1, 3)");
  }
  if (!(l_min > 0.0 && l_min < l_max)) {
    throw std::invalid_argument("Levy lengths must satisfy 0 < l_min < l_max");
  }
}

double LevyLengthFromUniform(const LevyParams& params, double u) {
  if (params.alpha == 1.0) throw std::invalid_argument("Levy exponent 1 is not supported");
  const double e = 1.0 - params.alpha;
  const double a = std::pow(params.l_min, e);
  const double b = std::pow(params.l_max, e);
  const double l = std::pow(a + u * (b - a), 1.0 / e);
  return std::clamp(l, params.l_min, params.l_max);
}

double SampleLevyLength(const LevyParams& params, Rng& rng) {
  return LevyLengthFromUniform(params, Uniform01(rng));
}

}  // namespace swarm
