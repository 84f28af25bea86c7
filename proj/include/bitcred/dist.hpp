#pragma once

// Exact binomial / trinomial / small-multinomial probabilities.
//
// Every weight is evaluated as exp(sum of log terms) against a table of
// ln(n!) values, so nothing overflows at the trial counts used here
// (N in the thousands). Probabilities of exactly 0 or 1 are handled as
// point masses rather than through 0*log(0).

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bitcred {

/// Probability vector p_1..p_K of a K-outcome experiment.
class OutcomeDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws std::domain_error unless K >= 2, every entry is in [0,1] and the
  /// entries sum to 1 within kSumTolerance.
  explicit OutcomeDistribution(std::vector<double> probs);

  static OutcomeDistribution uniform(std::size_t outcomes);
  /// Two-outcome distribution (p, 1-p).
  static OutcomeDistribution binary(double p);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t j) const { return probs_[j]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Observed counts L_1..L_K of an N-trial experiment.
class TrialCounts {
 public:
  /// Total is the sum of the counts; throws std::domain_error if K < 2,
  /// any count is negative, or the total is zero.
  explicit TrialCounts(std::vector<int> counts);
  /// Same, but also checks the counts add up to `total`.
  TrialCounts(std::vector<int> counts, int total);

  std::size_t size() const noexcept { return counts_.size(); }
  int total() const noexcept { return total_; }
  int operator[](std::size_t j) const { return counts_[j]; }
  std::span<const int> counts() const noexcept { return counts_; }

  friend bool operator==(const TrialCounts&, const TrialCounts&) = default;

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// ln(n!) for n = 0..max_n, in extended precision. Immutable once built.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(int max_n);

  int max_n() const noexcept { return static_cast<int>(values_.size()) - 1; }
  long double operator()(int n) const { return values_[static_cast<std::size_t>(n)]; }
  /// ln C(n, k).
  long double log_choose(int n, int k) const { return (*this)(n) - (*this)(k) - (*this)(n - k); }

 private:
  std::vector<long double> values_;
};

/// Process-wide table covering at least `n`; safe to call concurrently.
const LogFactorialTable& shared_log_factorials(int n);

/// Log-weights below this are returned as exactly zero weight.
inline constexpr long double kLogUnderflowFloor = -690.7755278982137L;  // ln(1e-300)

/// Binomial(trials, p) weight evaluator; cheap per-l calls after setup.
class BinomialTerm {
 public:
  /// Throws std::domain_error if trials < 0, p is outside [0,1] or the
  /// table is too small.
  BinomialTerm(const LogFactorialTable& table, int trials, double p);

  /// Throws std::domain_error unless 0 <= l <= trials.
  double operator()(int l) const;
  int trials() const noexcept { return trials_; }

 private:
  const LogFactorialTable* table_;
  int trials_;
  double p_;
  long double log_p_;
  long double log_q_;
};

/// Trinomial weight of (l_a, l_b, trials - l_a - l_b).
class TrinomialTerm {
 public:
  /// p_a + p_b may exceed 1 by at most OutcomeDistribution::kSumTolerance.
  TrinomialTerm(const LogFactorialTable& table, int trials, double p_a, double p_b);

  double operator()(int l_a, int l_b) const;
  int trials() const noexcept { return trials_; }

 private:
  const LogFactorialTable* table_;
  int trials_;
  long double p_[3];
  long double log_p_[3];
};

double binomial_pmf(const LogFactorialTable& table, int trials, double p, int l);
double binomial_pmf(int trials, double p, int l);

/// pmf of Binomial(trials, p) for l = 0..trials.
std::vector<double> binomial_weights(int trials, double p);

/// Sum of binomial_pmf over every l in 0..trials for which accept(l) holds.
template <std::predicate<int> Accept>
double binomial_sum(int trials, double p, Accept&& accept) {
  const auto weights = binomial_weights(trials, p);
  double total = 0.0;
  for (int l = 0; l <= trials; ++l)
    if (accept(l)) total += weights[static_cast<std::size_t>(l)];
  return total;
}

double trinomial_pmf(const LogFactorialTable& table, int trials, double p_a, double p_b,
                     int l_a, int l_b);
double trinomial_pmf(int trials, double p_a, double p_b, int l_a, int l_b);

/// Contiguous range [lo, hi] of counts plus the probability mass left outside.
struct CountWindow {
  int lo = 0;
  int hi = 0;
  double skipped_mass = 0.0;
};

/// Smallest window around the bulk of Binomial(trials, p) whose two tails each
/// carry at most tail_mass / 2. tail_mass == 0 returns the full range.
CountWindow binomial_window(int trials, double p, double tail_mass);

/// Result of a double sum over the trinomial (L_a, L_b) law.
struct TrinomialSum {
  double value = 0.0;
  /// Upper bound on the probability of the (l_a, l_b) cells left out.
  double skipped_mass = 0.0;
};

/// Number of compositions of `trials` into `outcomes` parts, saturating at
/// UINT64_MAX.
std::uint64_t composition_count(int trials, std::size_t outcomes);

inline constexpr std::uint64_t kMaxEnumeration = 1'000'000;

/// Every composition of `trials` into dist.size() parts with its multinomial
/// weight, in reverse-lexicographic order (first count largest first).
/// Throws std::length_error when more than kMaxEnumeration compositions exist.
std::vector<std::pair<TrialCounts, double>> multinomial_enumerate(int trials,
                                                                  const OutcomeDistribution& dist);

}  // namespace bitcred
