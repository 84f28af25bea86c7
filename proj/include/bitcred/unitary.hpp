#pragma once

// SU(2) rotations, their embedding into K dimensions, products of such
// embeddings, and the exact dispersion of a transformed amplitude vector.
//
// Angles are radians. Indices are zero-based.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bitcred/dist.hpp"
#include "bitcred/repvec.hpp"

namespace bitcred {

/// exp(i tau n.sigma)-style rotation: tau is the rotation angle, (theta, phi)
/// the polar and azimuthal angles of the axis.
struct Rotation2Params {
  double tau = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  static Rotation2Params from_degrees(double tau_deg, double theta_deg, double phi_deg);

  /// Equivalent parameters with tau in [0, pi], theta in [0, pi] and phi in
  /// [0, 2 pi). (tau, n) and (2 pi - tau, -n) give the same matrix. For
  /// comparing parameter sets only.
  Rotation2Params canonical() const;
};

/// The 2x2 unitary (a, b; -b*, a*).
struct Unitary2 {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  Complex operator()(int row, int col) const;
  /// | |a|^2 + |b|^2 - 1 |
  double unit_residual() const;
};

/// a = cos tau + i sin tau cos theta, b = sin tau sin theta exp(-i phi).
Unitary2 rotation2(const Rotation2Params& params);

/// A Unitary2 acting on components i < j of a dim-dimensional vector.
struct EmbeddedRotation {
  std::size_t i = 0;
  std::size_t j = 1;
  Unitary2 rot;
  std::size_t dim = 2;
};

/// Dense K x K complex matrix, row-major.
class UnitaryK {
 public:
  static UnitaryK identity(std::size_t dim);
  /// Throws std::domain_error if the entries are not unitary within 1e-10.
  static UnitaryK from_entries(std::size_t dim, std::vector<Complex> entries);

  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  /// max |(U U^dagger - I)_rc|.
  double unitarity_residual() const;

  friend UnitaryK operator*(const UnitaryK& lhs, const UnitaryK& rhs);

 private:
  UnitaryK(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {}

  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Identity except for the (i, j) block, which carries the rotation.
UnitaryK embed(const EmbeddedRotation& er);

/// F_n ... F_2 F_1: the first listed factor acts first on a vector.
/// Throws std::invalid_argument if a factor's dimension differs from dim.
UnitaryK compose(std::size_t dim, std::span<const EmbeddedRotation> factors);

/// U v for an eta vector. Throws std::invalid_argument on dimension mismatch
/// and std::domain_error for nu/chi vectors.
RepVector apply(const UnitaryK& u, const RepVector& v);

/// `count` factors on random index pairs with uniformly drawn angles,
/// reproducible from `seed`.
std::vector<EmbeddedRotation> random_factors(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Default probability mass that the K > 2 joint-moment double sums may skip.
inline constexpr double kJointMomentTailMass = 1e-15;

/// Per-component dispersion of psi = U eta:
/// D^2(psi_k) = sum_{j,l} U_kj U_kl^* Cov(eta_j, eta_l).
/// Off-diagonal covariances need E sqrt(L_j L_l) / N, taken from a single
/// binomial sum when K = 2 and from a trinomial double sum otherwise.
DispersionReport dispersion_transformed(int trials, const OutcomeDistribution& dist,
                                        const PhaseVector& phases, const UnitaryK& u,
                                        double tail_mass = kJointMomentTailMass);

/// Same report from raw moments: E|psi_k|^2 - |E psi_k|^2.
DispersionReport dispersion_transformed_raw(int trials, const OutcomeDistribution& dist,
                                            const PhaseVector& phases, const UnitaryK& u,
                                            double tail_mass = kJointMomentTailMass);

/// Covariance matrix Cov(eta_j, eta_l) = E(eta_j eta_l^*) - E eta_j E eta_l^*,
/// row-major K x K.
std::vector<Complex> amplitude_covariance(int trials, const OutcomeDistribution& dist,
                                          const PhaseVector& phases,
                                          double tail_mass = kJointMomentTailMass);

/// Both sides of the pairwise conservation identity for one embedded
/// rotation, each evaluated literally over the joint law of (L_i, L_j).
struct PairDispersion {
  double before = 0.0;       // E|eta_i - E eta_i|^2 + E|eta_j - E eta_j|^2
  double after = 0.0;        // same for eta'_i = a eta_i + b eta_j, eta'_j = -b* eta_i + a* eta_j
  double after_reduced = 0.0;  // E{|eta_i|^2 + |eta_j|^2 + |E eta_i|^2 + |E eta_j|^2
                               //    - 2 Re[eta_i E eta_i^* + eta_j E eta_j^*]}
};

PairDispersion pair_dispersion(int trials, const OutcomeDistribution& dist,
                               const PhaseVector& phases, const EmbeddedRotation& er);

struct ConservationResult {
  double total_before = 0.0;
  double total_after = 0.0;
  double abs_difference = 0.0;
};

ConservationResult conservation_check(int trials, const OutcomeDistribution& dist,
                                      const PhaseVector& phases, const UnitaryK& u);

}  // namespace bitcred
