#pragma once

// Scalar encodings of an observed relative frequency and the probability
// that an N-trial experiment gets their first S bits right.

#include <span>
#include <string_view>
#include <vector>

namespace bitcred {

enum class EncodingKind {
  frequency,  // nu -> nu
  amplitude,  // nu -> sqrt(nu)
  arcsine,    // nu -> asin(2 nu - 1) / pi + 1/2
};

std::string_view to_string(EncodingKind kind);

/// Number S of stored bits. A stored value is trusted when it lies closer
/// than radius() = 2^-(S+1) to the encoded limit.
class BitBudget {
 public:
  explicit BitBudget(int bits);
  int bits() const noexcept { return bits_; }
  double radius() const noexcept;

 private:
  int bits_;
};

struct ProbabilityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  int trials = 0;
  BitBudget budget{1};
  EncodingKind kind = EncodingKind::frequency;
};

double encode_value(EncodingKind kind, double nu);

/// The value encode_value approaches as the relative frequency tends to p.
double encode_limit(EncodingKind kind, double p);

/// Inverse of the arcsine encoding: p = sin^2(pi x / 2).
double decode_arcsine(double x);

/// Standard deviation sqrt(p(1-p)/N) of the relative frequency.
double sigma_nu(double p, int trials);

/// 1/pi, the only constant c for which sigma_chi / sigma_nu = c / sqrt(p(1-p))
/// integrates to a map of [0,1] onto [0,1]:
/// d/dnu [asin(2nu-1)/pi + 1/2] = 1 / (pi sqrt(nu(1-nu))).
double arcsine_scale_constant();

/// P(|encode(L/N) - encode_limit(p)| < 2^-(S+1)) for L ~ Binomial(N, p).
double prob_bits_correct(EncodingKind kind, int trials, double p, BitBudget budget);

/// prob_bits_correct at every grid point; grid must be strictly increasing
/// inside [0,1]. Grid points are evaluated concurrently.
ProbabilityCurve prob_curve(EncodingKind kind, int trials, BitBudget budget,
                            std::span<const double> grid);

/// p = k / (points + 1) for k = 1..points, optionally with 0 and 1 added.
std::vector<double> default_grid(int points, bool include_endpoints = false);

/// (K-1) S: bits needed to pin down a K-outcome amplitude vector to S bits
/// per free component.
int info_content(int outcomes, BitBudget budget);

}  // namespace bitcred
