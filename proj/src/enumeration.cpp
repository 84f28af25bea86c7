#include "bitcred/enumeration.hpp"

#include <stdexcept>

namespace bitcred {

namespace {

RepVector transformed(const TrialCounts& counts, const PhaseVector& phases,
                      const std::optional<UnitaryK>& u) {
  RepVector v = build_vector(VectorKind::eta, counts, phases);
  return u ? apply(*u, v) : v;
}

}  // namespace

std::vector<Complex> enumerated_expectation(int trials, const OutcomeDistribution& dist,
                                            const PhaseVector& phases,
                                            const std::optional<UnitaryK>& u) {
  if (phases.size() != dist.size()) throw std::invalid_argument("phase vector length mismatch");
  std::vector<Complex> mean(dist.size(), Complex(0.0, 0.0));
  for (const auto& [counts, weight] : multinomial_enumerate(trials, dist)) {
    if (weight == 0.0) continue;
    const RepVector v = transformed(counts, phases, u);
    for (std::size_t k = 0; k < v.size(); ++k) mean[k] += weight * v.components[k];
  }
  return mean;
}

DispersionReport enumerated_dispersion(int trials, const OutcomeDistribution& dist,
                                       const PhaseVector& phases, const std::optional<UnitaryK>& u) {
  const auto mean = enumerated_expectation(trials, dist, phases, u);
  std::vector<double> per(dist.size(), 0.0);
  for (const auto& [counts, weight] : multinomial_enumerate(trials, dist)) {
    if (weight == 0.0) continue;
    const RepVector v = transformed(counts, phases, u);
    for (std::size_t k = 0; k < v.size(); ++k) per[k] += weight * std::norm(v.components[k] - mean[k]);
  }
  return DispersionReport::from_components(std::move(per), trials);
}

}  // namespace bitcred
