#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "swarm/explore.h"

namespace swarm {

Quadrature Quadrature::Default(const SensorSpec& spec) {
  return {-4.0 * spec.sigma, spec.s_max + 4.0 * spec.sigma, spec.sigma / 4.0};
}

Quadrature Quadrature::Extended(const SensorSpec& spec) {
  return {-8.0 * spec.sigma, spec.s_max + 8.0 * spec.sigma, spec.sigma / 4.0};
}

double MiConstant(double sigma) {
  return -std::log2(std::sqrt(2.0 * kPi) * sigma) - 0.5 * std::log2(std::exp(1.0));
}

double BeamMi(std::span<const double> cell_probs, std::span<const double> cell_dists,
              const SensorSpec& spec, std::optional<Quadrature> quadrature) {
  const Quadrature q = quadrature.value_or(Quadrature::Default(spec));
  const RangeMarginal marginal(cell_probs, cell_dists, spec);
  const int n = std::max(1, static_cast<int>(std::ceil((q.z_hi - q.z_lo) / q.step - 1e-9)));
  const double h = (q.z_hi - q.z_lo) / n;
  double integral = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double p = marginal.Density(q.z_lo + k * h);
    if (p <= 0.0) continue;
    const double f = -p * std::log2(p);
    integral += (k == 0 || k == n) ? 0.5 * f : f;
  }
  return integral * h + MiConstant(spec.sigma);
}

std::vector<std::size_t> SelectBeams(std::span<const CandidateBeam> beams,
                                     double tau_mi, double bin_width) {
  if (tau_mi < 0.0) throw std::invalid_argument("tau_mi must be non-negative");
  std::map<std::pair<int, long long>, std::size_t> best;
  for (std::size_t i = 0; i < beams.size(); ++i) {
    const CandidateBeam& b = beams[i];
    if (!(b.mi > tau_mi)) continue;
    const long long bin =
        bin_width > 0.0 ? std::llround(WrapAngle(b.angle) / bin_width) : 0;
    auto [it, inserted] = best.try_emplace({b.pose_index, bin}, i);
    if (!inserted && b.mi > beams[it->second].mi) it->second = i;
  }
  std::vector<std::size_t> kept;
  kept.reserve(best.size());
  for (const auto& [key, index] : best) kept.push_back(index);
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace swarm
