#pragma once

// Dispersion by brute force over every outcome composition. Independent of
// the per-component binomial reduction; feasible only for small N and K.

#include <optional>

#include "bitcred/dist.hpp"
#include "bitcred/repvec.hpp"
#include "bitcred/unitary.hpp"

namespace bitcred {

/// Expectation vector E(eta), or E(U eta), over the full multinomial law.
std::vector<Complex> enumerated_expectation(int trials, const OutcomeDistribution& dist,
                                            const PhaseVector& phases,
                                            const std::optional<UnitaryK>& u = std::nullopt);

/// Per-component E|psi_k - E psi_k|^2 over the full multinomial law, with
/// psi = U eta (or eta). Throws std::length_error when too many compositions.
DispersionReport enumerated_dispersion(int trials, const OutcomeDistribution& dist,
                                       const PhaseVector& phases,
                                       const std::optional<UnitaryK>& u = std::nullopt);

}  // namespace bitcred
