#include <algorithm>
#include <cmath>

#include "swarm/sensor.h"

namespace swarm {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double Gaussian(double z, double mean, double sigma) {
  const double d = (z - mean) / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * d * d);
}

}  // namespace

void SensorSpec::Validate() const {
  if (n_beams < 1) throw std::invalid_argument("sensor needs at least one beam");
  if (!(s_min >= 0.0 && s_min < s_max)) {
    throw std::invalid_argument("sensor range must satisfy 0 <= s_min < s_max");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sensor sigma must be positive");
  if (!(fov > 0.0 && fov <= 2.0 * kPi)) {
    throw std::invalid_argument("sensor field of view must lie in (0, 2 pi]");
  }
}

double SensorSpec::BeamAngle(int beam) const {
  if (n_beams == 1) return 0.0;
  return -0.5 * fov + fov * beam / (n_beams - 1);
}

double SensorSpec::BeamSpacing() const {
  return n_beams == 1 ? fov : fov / (n_beams - 1);
}

void InverseModelParams::Validate() const {
  if (!(0.0 < p_f && p_f < p_a && p_a < p_hit && p_hit < 1.0)) {
    throw std::invalid_argument("inverse model needs 0 < p_f < p_a < p_hit < 1");
  }
}

double ForwardMean(std::optional<double> delta, const SensorSpec& spec) {
  if (!delta || *delta >= spec.s_max) return spec.s_max;
  if (*delta <= spec.s_min) return 0.0;
  return *delta;
}

double ForwardPdf(double z, std::optional<double> delta, const SensorSpec& spec) {
  return Gaussian(z, ForwardMean(delta, spec), spec.sigma);
}

RangeMarginal::RangeMarginal(std::span<const double> cell_probs,
                             std::span<const double> cell_dists,
                             const SensorSpec& spec)
    : sigma_(spec.sigma) {
  if (cell_probs.size() != cell_dists.size()) {
    throw std::invalid_argument("beam probabilities and distances differ in length");
  }
  weights_.reserve(cell_probs.size() + 1);
  means_.reserve(cell_probs.size() + 1);
  weights_.push_back(0.0);  // e_0, filled in below
  means_.push_back(ForwardMean(std::nullopt, spec));
  double free_so_far = 1.0;
  for (std::size_t p = 0; p < cell_probs.size(); ++p) {
    const double prob = cell_probs[p];
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw std::invalid_argument("cell probability outside [0, 1]");
    }
    weights_.push_back(prob * free_so_far);
    means_.push_back(ForwardMean(cell_dists[p], spec));
    free_so_far *= 1.0 - prob;
  }
  weights_[0] = free_so_far;
}

double RangeMarginal::Density(double z) const {
  // Components further than 12 sigma contribute below double resolution
  // relative to the nearest mode.
  const double cutoff = 12.0 * sigma_;
  double total = 0.0;
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    if (weights_[p] == 0.0 || std::abs(z - means_[p]) > cutoff) continue;
    total += weights_[p] * Gaussian(z, means_[p], sigma_);
  }
  return total;
}

std::optional<double> InverseModel(double s, double z, const SensorSpec& spec,
                                   const InverseModelParams& params) {
  const double sigma = spec.sigma;
  const double slope = (params.p_a - params.p_f) / spec.s_max;
  if (z <= spec.s_max - sigma) {
    if (s < z - sigma) return slope * s + params.p_f;
    if (s <= z + sigma) return params.p_hit;
    return std::nullopt;
  }
  if (s < spec.s_max - sigma) return slope * s + params.p_f;
  if (s <= spec.s_max + sigma) return params.p_a;
  return std::nullopt;
}

double SimulateMeasurement(std::optional<double> delta, const SensorSpec& spec,
                           Rng& rng) {
  const double z = ForwardMean(delta, spec) + spec.sigma * StandardNormal(rng);
  return std::clamp(z, 0.0, spec.s_max + 3.0 * spec.sigma);
}

}  // namespace swarm
