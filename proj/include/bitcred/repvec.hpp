#pragma once

// Representation vectors of observed counts and the dispersion of the
// complex amplitude vector eta_j = sqrt(L_j / N) exp(i phi_j).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bitcred/dist.hpp"
#include "bitcred/encode.hpp"

namespace bitcred {

using Complex = std::complex<double>;

/// Per-component phases in radians.
class PhaseVector {
 public:
  /// Throws std::domain_error on non-finite angles.
  explicit PhaseVector(std::vector<double> radians);
  static PhaseVector zeros(std::size_t size);

  std::size_t size() const noexcept { return radians_.size(); }
  double operator[](std::size_t j) const { return radians_[j]; }
  std::span<const double> radians() const noexcept { return radians_; }
  bool all_zero() const noexcept;
  /// Angles reduced to [0, 2 pi).
  PhaseVector canonical() const;

 private:
  std::vector<double> radians_;
};

enum class VectorKind {
  nu,   // (L/N, 1 - L/N); two outcomes, real
  eta,  // sqrt(L_j/N) exp(i phi_j); any K
  chi,  // (chi(L/N), 1 - chi(L/N)); two outcomes, real
};

struct RepVector {
  VectorKind kind = VectorKind::eta;
  std::vector<Complex> components;

  std::size_t size() const noexcept { return components.size(); }
  double norm() const;
};

/// Nu and chi vectors need K = 2 and all-zero phases; anything else throws
/// std::domain_error.
RepVector build_vector(VectorKind kind, const TrialCounts& counts, const PhaseVector& phases);
RepVector build_vector(VectorKind kind, const TrialCounts& counts);

/// Probability that the observed two-outcome vector endpoint lies within
/// R * 2^-(S+1) of the limiting endpoint, R being the length of the endpoint
/// locus: pi/2 for eta (quarter circle), sqrt(2) for nu and chi (segments).
double endpoint_prob(VectorKind kind, int trials, double p, BitBudget budget);

/// First two moments of a single amplitude component under Binomial(N, p).
struct AmplitudeMoments {
  double mean_root = 0.0;       // E sqrt(L/N)
  double mean_frequency = 0.0;  // E L/N, analytically p
};

AmplitudeMoments amplitude_moments(int trials, double p);

/// E(eta_j) = E sqrt(L_j/N) * exp(i phi_j). Differs from sqrt(p_j) at small N.
Complex expectation_eta(int trials, double p, double phi = 0.0);

/// D_j^2 = E|eta_j - E eta_j|^2, evaluated as E(L/N) - (E sqrt(L/N))^2.
/// The phase factors out of both terms, so the result does not depend on phi.
double dispersion_component(int trials, double p, double phi = 0.0);

/// Same quantity, summed term by term as
/// sum_l w_l [l/N - 2 Re(eta_l^* E eta) + |E eta|^2].
double dispersion_component_literal(int trials, double p, double phi = 0.0);

struct DispersionReport {
  std::vector<double> per_component;
  double total = 0.0;
  double n_scaled_total = 0.0;
  int trials = 0;

  /// Builds total and n_scaled_total from the components; clamps tiny
  /// negative rounding residue to zero.
  static DispersionReport from_components(std::vector<double> per_component, int trials);
};

DispersionReport dispersion_total(int trials, const OutcomeDistribution& dist,
                                  const PhaseVector& phases);
DispersionReport dispersion_total(int trials, const OutcomeDistribution& dist);

/// Large-N limit (K-1)/(4N) of the total dispersion.
double asymptotic_dispersion(int outcomes, int trials);

}  // namespace bitcred
