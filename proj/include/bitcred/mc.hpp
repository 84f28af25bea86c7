#pragma once

// Monte Carlo simulation of the experiments themselves, used to check the
// exact summations independently.
//
// Replication r draws from its own generator stream (seed, r), and results
// are reduced in replication order, so estimates do not depend on how many
// threads ran them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bitcred/dist.hpp"
#include "bitcred/encode.hpp"
#include "bitcred/repvec.hpp"
#include "bitcred/rng.hpp"
#include "bitcred/unitary.hpp"

namespace bitcred {

struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t replications = 10'000;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  /// sample standard deviation / sqrt(replications); +inf for one replication.
  double std_error = 0.0;
  std::size_t replications = 0;
  std::string_view generator = kGeneratorId;

  /// |exact - mean| <= sigmas * std_error.
  bool covers(double exact, double sigmas = 3.0) const;
};

/// Mean and standard error of per-replication samples, summed in order.
McEstimate summarize(const std::vector<double>& samples);

/// N categorical draws by inverse CDF, one uniform per trial.
TrialCounts sample_counts(int trials, const OutcomeDistribution& dist, std::mt19937_64& engine);

/// Counts of replication `replication` under cfg.
TrialCounts sample_counts(int trials, const OutcomeDistribution& dist, const SamplerConfig& cfg,
                          std::size_t replication = 0);

/// Counts for replications 0..cfg.replications-1.
std::vector<TrialCounts> sample_stream(int trials, const OutcomeDistribution& dist,
                                       const SamplerConfig& cfg);

/// Fraction of simulated experiments whose encoded frequency lies strictly
/// within 2^-(S+1) of the encoded limit.
McEstimate mc_prob_bits(EncodingKind kind, int trials, double p, BitBudget budget,
                        const SamplerConfig& cfg);

/// Mean of |psi - E psi|^2 over simulated experiments, psi = U eta (or eta
/// when no U is given), with E psi = U E eta taken from the exact sums.
McEstimate mc_dispersion(int trials, const OutcomeDistribution& dist, const PhaseVector& phases,
                         const std::optional<UnitaryK>& u, const SamplerConfig& cfg);

}  // namespace bitcred
