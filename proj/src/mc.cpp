#include "bitcred/mc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bitcred/kernels.hpp"

namespace bitcred {

void SamplerConfig::validate() const {
  if (replications < 1) throw std::domain_error("need at least one replication");
}

bool McEstimate::covers(double exact, double sigmas) const {
  return std::abs(exact - mean) <= sigmas * std_error;
}

McEstimate summarize(const std::vector<double>& samples) {
  McEstimate est;
  est.replications = samples.size();
  if (samples.empty()) throw std::domain_error("no samples");
  const double n = static_cast<double>(samples.size());
  est.mean = kernels::ordered_sum(samples) / n;
  if (samples.size() == 1) {
    est.std_error = std::numeric_limits<double>::infinity();
    return est;
  }
  double ss = 0.0;
  for (double x : samples) ss += (x - est.mean) * (x - est.mean);
  est.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return est;
}

TrialCounts sample_counts(int trials, const OutcomeDistribution& dist, std::mt19937_64& engine) {
  if (trials < 1) throw std::domain_error("trial count must be positive");
  const std::size_t k = dist.size();
  std::vector<double> cumulative(k);
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) cumulative[j] = acc += dist[j];
  std::vector<int> counts(k, 0);
  for (int t = 0; t < trials; ++t) {
    const double u = uniform01(engine);
    std::size_t j = 0;
    while (j + 1 < k && !(u < cumulative[j])) ++j;
    ++counts[j];
  }
  return TrialCounts(std::move(counts), trials);
}

TrialCounts sample_counts(int trials, const OutcomeDistribution& dist, const SamplerConfig& cfg,
                          std::size_t replication) {
  auto engine = stream_engine(cfg.seed, replication);
  return sample_counts(trials, dist, engine);
}

std::vector<TrialCounts> sample_stream(int trials, const OutcomeDistribution& dist,
                                       const SamplerConfig& cfg) {
  cfg.validate();
  std::vector<TrialCounts> out;
  out.reserve(cfg.replications);
  for (std::size_t r = 0; r < cfg.replications; ++r) out.push_back(sample_counts(trials, dist, cfg, r));
  return out;
}

McEstimate mc_prob_bits(EncodingKind kind, int trials, double p, BitBudget budget,
                        const SamplerConfig& cfg) {
  cfg.validate();
  const auto dist = OutcomeDistribution::binary(p);
  const double limit = encode_limit(kind, p);
  const double radius = budget.radius();
  const auto hits = kernels::omp::replicate(cfg.replications, [&](std::size_t r) {
    const TrialCounts counts = sample_counts(trials, dist, cfg, r);
    const double nu = static_cast<double>(counts[0]) / trials;
    return std::abs(encode_value(kind, nu) - limit) < radius ? 1.0 : 0.0;
  });
  return summarize(hits);
}

McEstimate mc_dispersion(int trials, const OutcomeDistribution& dist, const PhaseVector& phases,
                         const std::optional<UnitaryK>& u, const SamplerConfig& cfg) {
  cfg.validate();
  if (phases.size() != dist.size())
    throw std::invalid_argument("phase vector length does not match the outcome count");
  if (u && u->dim() != dist.size()) throw std::invalid_argument("unitary dimension mismatch");

  RepVector mean{VectorKind::eta, {}};
  for (std::size_t j = 0; j < dist.size(); ++j)
    mean.components.push_back(expectation_eta(trials, dist[j], phases[j]));
  if (u) mean = apply(*u, mean);

  const auto samples = kernels::omp::replicate(cfg.replications, [&](std::size_t r) {
    const TrialCounts counts = sample_counts(trials, dist, cfg, r);
    RepVector v = build_vector(VectorKind::eta, counts, phases);
    if (u) v = apply(*u, v);
    double sq = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) sq += std::norm(v.components[k] - mean.components[k]);
    return sq;
  });
  return summarize(samples);
}

}  // namespace bitcred
