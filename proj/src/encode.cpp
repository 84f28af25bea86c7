#include "bitcred/encode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bitcred/dist.hpp"
#include "bitcred/kernels.hpp"

namespace bitcred {

namespace {

constexpr double kClampTolerance = 1e-12;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
}

double arcsine_map(double nu) {
  double arg = 2.0 * nu - 1.0;
  if (arg > 1.0 && arg <= 1.0 + kClampTolerance) arg = 1.0;
  if (arg < -1.0 && arg >= -1.0 - kClampTolerance) arg = -1.0;
  return std::asin(arg) / std::numbers::pi + 0.5;
}

}  // namespace

std::string_view to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::frequency:
      return "frequency";
    case EncodingKind::amplitude:
      return "amplitude";
    case EncodingKind::arcsine:
      return "arcsine";
  }
  return "?";
}

BitBudget::BitBudget(int bits) : bits_(bits) {
  if (bits < 1) throw std::domain_error("bit budget must be at least 1");
}

double BitBudget::radius() const noexcept { return std::ldexp(1.0, -(bits_ + 1)); }

double encode_value(EncodingKind kind, double nu) {
  check_unit(nu, "relative frequency");
  switch (kind) {
    case EncodingKind::frequency:
      return nu;
    case EncodingKind::amplitude:
      return std::sqrt(nu);
    case EncodingKind::arcsine:
      return arcsine_map(nu);
  }
  throw std::domain_error("unknown encoding");
}

double encode_limit(EncodingKind kind, double p) {
  check_unit(p, "probability");
  return encode_value(kind, p);
}

double decode_arcsine(double x) {
  check_unit(x, "arcsine value");
  const double s = std::sin(std::numbers::pi * x / 2.0);
  return s * s;
}

double sigma_nu(double p, int trials) {
  check_unit(p, "probability");
  if (trials < 1) throw std::domain_error("trial count must be positive");
  return std::sqrt(p * (1.0 - p) / trials);
}

double arcsine_scale_constant() { return std::numbers::inv_pi; }

double prob_bits_correct(EncodingKind kind, int trials, double p, BitBudget budget) {
  if (trials < 1) throw std::domain_error("trial count must be positive");
  const double limit = encode_limit(kind, p);
  const double radius = budget.radius();
  return binomial_sum(trials, p, [&](int l) {
    const double nu = static_cast<double>(l) / trials;
    return std::abs(encode_value(kind, nu) - limit) < radius;
  });
}

ProbabilityCurve prob_curve(EncodingKind kind, int trials, BitBudget budget,
                            std::span<const double> grid) {
  if (grid.empty()) throw std::domain_error("probability grid is empty");
  if (trials < 1) throw std::domain_error("trial count must be positive");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_unit(grid[i], "grid point");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::domain_error("probability grid must be strictly increasing");
  }
  ProbabilityCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.values = kernels::omp::map_grid(
      grid, [&](double p) { return prob_bits_correct(kind, trials, p, budget); });
  curve.trials = trials;
  curve.budget = budget;
  curve.kind = kind;
  return curve;
}

std::vector<double> default_grid(int points, bool include_endpoints) {
  if (points < 1) throw std::domain_error("grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + 2);
  if (include_endpoints) grid.push_back(0.0);
  for (int k = 1; k <= points; ++k)
    grid.push_back(static_cast<double>(k) / static_cast<double>(points + 1));
  if (include_endpoints) grid.push_back(1.0);
  return grid;
}

int info_content(int outcomes, BitBudget budget) {
  if (outcomes < 2) throw std::domain_error("need at least two outcomes");
  return (outcomes - 1) * budget.bits();
}

}  // namespace bitcred
