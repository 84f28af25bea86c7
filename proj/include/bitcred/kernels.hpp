#pragma once

// Data-parallel inner loops behind the library.
//
// Each kernel exists twice: a serial reference in kernels::serial and an
// OpenMP version in kernels::omp. Per-element work is identical and every
// reduction runs over per-index partials in index order, so both versions
// return bitwise-identical results for any thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "bitcred/dist.hpp"

namespace bitcred::kernels {

/// Below this many terms a binomial weight vector is filled serially.
inline constexpr int kParallelWeightsThreshold = 1 << 14;

inline double ordered_sum(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

namespace serial {

inline std::vector<double> binomial_weights(const LogFactorialTable& table, int trials, double p) {
  const BinomialTerm term(table, trials, p);
  std::vector<double> weights(static_cast<std::size_t>(trials) + 1);
  for (int l = 0; l <= trials; ++l) weights[static_cast<std::size_t>(l)] = term(l);
  return weights;
}

/// values[i] = f(grid[i]).
template <class F>
std::vector<double> map_grid(std::span<const double> grid, F&& f) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return values;
}

/// values[r] = f(r) for r = 0..count-1.
template <class F>
std::vector<double> replicate(std::size_t count, F&& f) {
  std::vector<double> values(count);
  for (std::size_t r = 0; r < count; ++r) values[r] = f(r);
  return values;
}

/// Row partial sums of w(l_a, l_b) * f(l_a, l_b) over the trinomial law,
/// one entry per l_a in [rows.lo, rows.hi].
template <class F>
std::vector<double> trinomial_rows(const TrinomialTerm& term, CountWindow rows, CountWindow cols,
                                   F&& f) {
  std::vector<double> partial(static_cast<std::size_t>(rows.hi - rows.lo + 1), 0.0);
  for (int l_a = rows.lo; l_a <= rows.hi; ++l_a) {
    double row = 0.0;
    const int last = std::min(cols.hi, term.trials() - l_a);
    for (int l_b = cols.lo; l_b <= last; ++l_b) row += term(l_a, l_b) * f(l_a, l_b);
    partial[static_cast<std::size_t>(l_a - rows.lo)] = row;
  }
  return partial;
}

}  // namespace serial

namespace omp {

namespace detail {

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown once the loop has finished.
class ExceptionSlot {
 public:
  template <class Body>
  void run(Body&& body) noexcept {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace detail

inline std::vector<double> binomial_weights(const LogFactorialTable& table, int trials, double p) {
  const BinomialTerm term(table, trials, p);
  std::vector<double> weights(static_cast<std::size_t>(trials) + 1);
#pragma omp parallel for schedule(static) if (trials >= kParallelWeightsThreshold)
  for (int l = 0; l <= trials; ++l) weights[static_cast<std::size_t>(l)] = term(l);
  return weights;
}

template <class F>
std::vector<double> map_grid(std::span<const double> grid, F&& f) {
  std::vector<double> values(grid.size());
  detail::ExceptionSlot slot;
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    slot.run([&] { values[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]); });
  slot.rethrow();
  return values;
}

template <class F>
std::vector<double> replicate(std::size_t count, F&& f) {
  std::vector<double> values(count);
  detail::ExceptionSlot slot;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r)
    slot.run([&] { values[static_cast<std::size_t>(r)] = f(static_cast<std::size_t>(r)); });
  slot.rethrow();
  return values;
}

template <class F>
std::vector<double> trinomial_rows(const TrinomialTerm& term, CountWindow rows, CountWindow cols,
                                   F&& f) {
  std::vector<double> partial(static_cast<std::size_t>(rows.hi - rows.lo + 1), 0.0);
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 16)
  for (int l_a = rows.lo; l_a <= rows.hi; ++l_a) {
    slot.run([&] {
      double row = 0.0;
      const int last = std::min(cols.hi, term.trials() - l_a);
      for (int l_b = cols.lo; l_b <= last; ++l_b) row += term(l_a, l_b) * f(l_a, l_b);
      partial[static_cast<std::size_t>(l_a - rows.lo)] = row;
    });
  }
  slot.rethrow();
  return partial;
}

}  // namespace omp

/// E[f(L_a, L_b)] under the trinomial law, skipping cells outside the bulk
/// windows of both marginals. With tail_mass > 0 the dropped probability is
/// at most tail_mass and is reported; |f| <= 1 then bounds the error by it.
template <class F>
TrinomialSum trinomial_expectation(int trials, double p_a, double p_b, double tail_mass, F&& f) {
  const TrinomialTerm term(shared_log_factorials(trials), trials, p_a, p_b);
  const CountWindow rows = binomial_window(trials, p_a, tail_mass / 2.0);
  const CountWindow cols = binomial_window(trials, p_b, tail_mass / 2.0);
  const auto partial = omp::trinomial_rows(term, rows, cols, f);
  return {ordered_sum(partial), rows.skipped_mass + cols.skipped_mass};
}

}  // namespace bitcred::kernels
