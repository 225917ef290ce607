#include <cmath>
#include <vector>

#include "swarm/oracle.h"

namespace swarm::oracle {

double BruteForceMi(std::span<const double> cell_probs, std::span<const double> cell_dists,
                    const SensorSpec& spec, const Quadrature& quadrature) {
  const int n = static_cast<int>(cell_probs.size());
  if (n > 20 || cell_dists.size() != cell_probs.size()) {
    throw std::invalid_argument("brute-force oracle supports at most 20 matching cells");
  }
  // Reflector position per configuration: the first occupied cell, or none.
  std::vector<double> reflector_mean(n + 1);
  for (int p = 0; p < n; ++p) {
    const double d = cell_dists[p];
    reflector_mean[p] = d <= spec.s_min ? 0.0 : (d >= spec.s_max ? spec.s_max : d);
  }
  reflector_mean[n] = spec.s_max;

  const std::size_t n_configs = std::size_t{1} << n;
  std::vector<double> config_prob(n_configs);
  std::vector<int> config_class(n_configs);
  for (std::size_t mask = 0; mask < n_configs; ++mask) {
    double prob = 1.0;
    int first = n;
    for (int p = 0; p < n; ++p) {
      const bool occupied = (mask >> p) & 1U;
      prob *= occupied ? cell_probs[p] : 1.0 - cell_probs[p];
      if (occupied && first == n) first = p;
    }
    config_prob[mask] = prob;
    config_class[mask] = first;
  }

  int intervals = static_cast<int>(
      std::ceil((quadrature.z_hi - quadrature.z_lo) / (0.5 * quadrature.step)));
  if (intervals % 2) ++intervals;
  const double h = (quadrature.z_hi - quadrature.z_lo) / intervals;
  const double sigma = spec.sigma;
  const double norm = 1.0 / (std::sqrt(2.0 * 3.14159265358979323846) * sigma);

  std::vector<double> g(n + 1);
  double integral = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double z = quadrature.z_lo + k * h;
    for (int p = 0; p <= n; ++p) {
      const double d = (z - reflector_mean[p]) / sigma;
      g[p] = norm * std::exp(-0.5 * d * d);
    }
    double pz = 0.0;
    for (std::size_t c = 0; c < n_configs; ++c) pz += config_prob[c] * g[config_class[c]];
    double f = 0.0;
    if (pz > 0.0) {
      for (std::size_t c = 0; c < n_configs; ++c) {
        const double gc = g[config_class[c]];
        if (gc > 0.0 && config_prob[c] > 0.0) f += config_prob[c] * gc * std::log2(gc / pz);
      }
    }
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    integral += weight * f;
  }
  return integral * h / 3.0;
}

}  // namespace swarm::oracle
