#include "bitcred/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bitcred/kernels.hpp"

namespace bitcred {

namespace {

// k * ln(p) with the convention 0 * ln(0) = 0.
long double xlogp(int k, long double log_p) { return k == 0 ? 0.0L : k * log_p; }

// ln(p) and ln(1-p) evaluated so that swapping p and 1-p swaps the two
// results bitwise whenever 1-p is exact in double (always true for p > 0.5).
std::pair<long double, long double> log_pair(double p) {
  if (p <= 0.5) {
    const long double small = p;
    return {std::log(small), std::log1p(-small)};
  }
  const long double small = 1.0 - p;  // exact by Sterbenz
  return {std::log1p(-small), std::log(small)};
}

double weight_from_log(long double log_w) {
  if (!(log_w >= kLogUnderflowFloor)) return 0.0;
  return static_cast<double>(std::exp(log_w));
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) throw std::domain_error("distribution needs at least two outcomes");
  double sum = 0.0;
  for (double p : probs_) {
    check_probability(p, "outcome probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::domain_error("outcome probabilities sum to " + std::to_string(sum) + ", not 1");
}

OutcomeDistribution OutcomeDistribution::uniform(std::size_t outcomes) {
  if (outcomes < 2) throw std::domain_error("distribution needs at least two outcomes");
  return OutcomeDistribution(std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
}

OutcomeDistribution OutcomeDistribution::binary(double p) {
  check_probability(p, "p");
  return OutcomeDistribution({p, 1.0 - p});
}

TrialCounts::TrialCounts(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw std::domain_error("counts need at least two outcomes");
  long long total = 0;
  for (int c : counts_) {
    if (c < 0) throw std::domain_error("counts must be non-negative");
    total += c;
  }
  if (total <= 0 || total > std::numeric_limits<int>::max())
    throw std::domain_error("total trial count must be a positive int");
  total_ = static_cast<int>(total);
}

TrialCounts::TrialCounts(std::vector<int> counts, int total) : TrialCounts(std::move(counts)) {
  if (total_ != total)
    throw std::domain_error("counts sum to " + std::to_string(total_) + ", expected " +
                            std::to_string(total));
}

LogFactorialTable::LogFactorialTable(int max_n) {
  if (max_n < 0) throw std::domain_error("LogFactorialTable size must be non-negative");
  values_.resize(static_cast<std::size_t>(max_n) + 1);
  values_[0] = 0.0L;
  for (int n = 1; n <= max_n; ++n)
    values_[static_cast<std::size_t>(n)] = std::lgamma(static_cast<long double>(n) + 1.0L);
  if (max_n >= 1) values_[1] = 0.0L;
}

const LogFactorialTable& shared_log_factorials(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const LogFactorialTable>> tables;
  if (n < 0) throw std::domain_error("negative factorial argument");
  // Capacities are powers of two so repeated growth stays logarithmic.
  int capacity = 1 << 12;
  while (capacity < n) {
    if (capacity > std::numeric_limits<int>::max() / 2) {
      capacity = n;
      break;
    }
    capacity *= 2;
  }
  std::lock_guard lock(mutex);
  auto& slot = tables[capacity];
  if (!slot) slot = std::make_unique<const LogFactorialTable>(capacity);
  return *slot;
}

BinomialTerm::BinomialTerm(const LogFactorialTable& table, int trials, double p)
    : table_(&table), trials_(trials), p_(p) {
  if (trials < 0) throw std::domain_error("trial count must be non-negative");
  check_probability(p, "p");
  if (trials > table.max_n()) throw std::domain_error("log-factorial table too small");
  std::tie(log_p_, log_q_) = log_pair(p);
}

double BinomialTerm::operator()(int l) const {
  if (l < 0 || l > trials_)
    throw std::domain_error("count " + std::to_string(l) + " outside 0.." + std::to_string(trials_));
  if (p_ == 0.0) return l == 0 ? 1.0 : 0.0;
  if (p_ == 1.0) return l == trials_ ? 1.0 : 0.0;
  const int rest = trials_ - l;
  const long double log_choose = (*table_)(trials_) - ((*table_)(l) + (*table_)(rest));
  return weight_from_log(log_choose + (xlogp(l, log_p_) + xlogp(rest, log_q_)));
}

TrinomialTerm::TrinomialTerm(const LogFactorialTable& table, int trials, double p_a, double p_b)
    : table_(&table), trials_(trials) {
  if (trials < 0) throw std::domain_error("trial count must be non-negative");
  check_probability(p_a, "p_a");
  check_probability(p_b, "p_b");
  if (p_a + p_b > 1.0 + OutcomeDistribution::kSumTolerance)
    throw std::domain_error("p_a + p_b exceeds 1");
  if (trials > table.max_n()) throw std::domain_error("log-factorial table too small");
  p_[0] = p_a;
  p_[1] = p_b;
  p_[2] = std::max(0.0L, 1.0L - static_cast<long double>(p_a) - static_cast<long double>(p_b));
  for (int k = 0; k < 3; ++k)
    log_p_[k] = p_[k] > 0.0L ? std::log(p_[k]) : -std::numeric_limits<long double>::infinity();
}

double TrinomialTerm::operator()(int l_a, int l_b) const {
  if (l_a < 0 || l_b < 0 || l_a + l_b > trials_)
    throw std::domain_error("trinomial counts outside the simplex");
  const int rest = trials_ - l_a - l_b;
  const int counts[3] = {l_a, l_b, rest};
  long double log_w = (*table_)(trials_);
  for (int k = 0; k < 3; ++k) {
    if (counts[k] == 0) continue;
    if (p_[k] == 0.0L) return 0.0;
    log_w += counts[k] * log_p_[k] - (*table_)(counts[k]);
  }
  return weight_from_log(log_w);
}

double binomial_pmf(const LogFactorialTable& table, int trials, double p, int l) {
  return BinomialTerm(table, trials, p)(l);
}

double binomial_pmf(int trials, double p, int l) {
  return binomial_pmf(shared_log_factorials(trials), trials, p, l);
}

std::vector<double> binomial_weights(int trials, double p) {
  return kernels::omp::binomial_weights(shared_log_factorials(trials), trials, p);
}

double trinomial_pmf(const LogFactorialTable& table, int trials, double p_a, double p_b, int l_a,
                     int l_b) {
  return TrinomialTerm(table, trials, p_a, p_b)(l_a, l_b);
}

double trinomial_pmf(int trials, double p_a, double p_b, int l_a, int l_b) {
  return trinomial_pmf(shared_log_factorials(trials), trials, p_a, p_b, l_a, l_b);
}

CountWindow binomial_window(int trials, double p, double tail_mass) {
  if (tail_mass < 0.0) throw std::domain_error("tail mass must be non-negative");
  CountWindow window{0, trials, 0.0};
  if (tail_mass == 0.0 || trials == 0) return window;
  const auto weights = binomial_weights(trials, p);
  const double per_tail = tail_mass / 2.0;
  double low = 0.0;
  while (window.lo < trials && low + weights[static_cast<std::size_t>(window.lo)] <= per_tail)
    low += weights[static_cast<std::size_t>(window.lo++)];
  double high = 0.0;
  while (window.hi > window.lo && high + weights[static_cast<std::size_t>(window.hi)] <= per_tail)
    high += weights[static_cast<std::size_t>(window.hi--)];
  window.skipped_mass = low + high;
  return window;
}

std::uint64_t composition_count(int trials, std::size_t outcomes) {
  if (trials < 0 || outcomes == 0) return 0;
  // C(trials + outcomes - 1, outcomes - 1), built incrementally so every
  // intermediate value is itself a binomial coefficient.
  const std::uint64_t k = outcomes - 1;
  const std::uint64_t n = static_cast<std::uint64_t>(trials) + k;
  __extension__ typedef unsigned __int128 wide;
  wide c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

std::vector<std::pair<TrialCounts, double>> multinomial_enumerate(int trials,
                                                                  const OutcomeDistribution& dist) {
  if (trials < 1) throw std::domain_error("trial count must be positive");
  const std::size_t outcomes = dist.size();
  const auto count = composition_count(trials, outcomes);
  if (count > kMaxEnumeration)
    throw std::length_error(std::to_string(count) + " compositions exceed the enumeration limit");

  const auto& table = shared_log_factorials(trials);
  std::vector<long double> log_p(outcomes);
  for (std::size_t j = 0; j < outcomes; ++j)
    log_p[j] = dist[j] > 0.0 ? std::log(static_cast<long double>(dist[j]))
                             : -std::numeric_limits<long double>::infinity();

  std::vector<std::pair<TrialCounts, double>> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> parts(outcomes, 0);
  parts[0] = trials;
  for (;;) {
    long double log_w = table(trials);
    bool impossible = false;
    for (std::size_t j = 0; j < outcomes; ++j) {
      if (parts[j] == 0) continue;
      if (dist[j] == 0.0) {
        impossible = true;
        break;
      }
      log_w += parts[j] * log_p[j] - table(parts[j]);
    }
    out.emplace_back(TrialCounts(parts, trials), impossible ? 0.0 : weight_from_log(log_w));

    // Next composition: take one unit from the rightmost non-zero part
    // before the last and hand it, together with the last part, to its
    // right neighbour.
    std::ptrdiff_t pivot = static_cast<std::ptrdiff_t>(outcomes) - 2;
    while (pivot >= 0 && parts[static_cast<std::size_t>(pivot)] == 0) --pivot;
    if (pivot < 0) break;
    const int tail = parts[outcomes - 1];
    parts[outcomes - 1] = 0;
    --parts[static_cast<std::size_t>(pivot)];
    parts[static_cast<std::size_t>(pivot) + 1] = tail + 1;
  }
  return out;
}

}  // namespace bitcred
