#include "bitcred/repvec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bitcred/kernels.hpp"

namespace bitcred {

namespace {

void check_trials(int trials) {
  if (trials < 1) throw std::domain_error("trial count must be positive");
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> radians) : radians_(std::move(radians)) {
  for (double phi : radians_)
    if (!std::isfinite(phi)) throw std::domain_error("phases must be finite");
}

PhaseVector PhaseVector::zeros(std::size_t size) { return PhaseVector(std::vector<double>(size, 0.0)); }

bool PhaseVector::all_zero() const noexcept {
  for (double phi : radians_)
    if (phi != 0.0) return false;
  return true;
}

PhaseVector PhaseVector::canonical() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> reduced(radians_.size());
  for (std::size_t j = 0; j < radians_.size(); ++j) {
    double phi = std::fmod(radians_[j], two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    reduced[j] = phi;
  }
  return PhaseVector(std::move(reduced));
}

double RepVector::norm() const {
  double sum = 0.0;
  for (const auto& c : components) sum += std::norm(c);
  return std::sqrt(sum);
}

RepVector build_vector(VectorKind kind, const TrialCounts& counts, const PhaseVector& phases) {
  if (phases.size() != counts.size())
    throw std::domain_error("phase vector length does not match the outcome count");
  const double n = counts.total();
  RepVector v{kind, {}};
  switch (kind) {
    case VectorKind::eta:
      v.components.reserve(counts.size());
      for (std::size_t j = 0; j < counts.size(); ++j)
        v.components.push_back(std::polar(std::sqrt(counts[j] / n), phases[j]));
      return v;
    case VectorKind::nu:
    case VectorKind::chi: {
      if (counts.size() != 2) throw std::domain_error("nu and chi vectors need exactly two outcomes");
      if (!phases.all_zero()) throw std::domain_error("nu and chi vectors are real; phases must be zero");
      const double nu = counts[0] / n;
      if (kind == VectorKind::nu) {
        v.components = {Complex(nu, 0.0), Complex(counts[1] / n, 0.0)};
      } else {
        const double chi = encode_value(EncodingKind::arcsine, nu);
        v.components = {Complex(chi, 0.0), Complex(1.0 - chi, 0.0)};
      }
      return v;
    }
  }
  throw std::domain_error("unknown vector kind");
}

RepVector build_vector(VectorKind kind, const TrialCounts& counts) {
  return build_vector(kind, counts, PhaseVector::zeros(counts.size()));
}

double endpoint_prob(VectorKind kind, int trials, double p, BitBudget budget) {
  check_trials(trials);
  const RepVector truth = [&] {
    switch (kind) {
      case VectorKind::eta:
        return RepVector{kind, {Complex(std::sqrt(p), 0.0), Complex(std::sqrt(1.0 - p), 0.0)}};
      case VectorKind::nu:
        return RepVector{kind, {Complex(p, 0.0), Complex(1.0 - p, 0.0)}};
      case VectorKind::chi: {
        const double x = encode_limit(EncodingKind::arcsine, p);
        return RepVector{kind, {Complex(x, 0.0), Complex(1.0 - x, 0.0)}};
      }
    }
    throw std::domain_error("unknown vector kind");
  }();
  const double locus = kind == VectorKind::eta ? std::numbers::pi / 2.0 : std::numbers::sqrt2;
  const double radius = locus * budget.radius();
  return binomial_sum(trials, p, [&](int l) {
    const RepVector observed = build_vector(kind, TrialCounts({l, trials - l}, trials));
    const double dx = observed.components[0].real() - truth.components[0].real();
    const double dy = observed.components[1].real() - truth.components[1].real();
    return std::hypot(dx, dy) < radius;
  });
}

AmplitudeMoments amplitude_moments(int trials, double p) {
  check_trials(trials);
  const auto weights = binomial_weights(trials, p);
  AmplitudeMoments m;
  for (int l = 0; l <= trials; ++l) {
    const double w = weights[static_cast<std::size_t>(l)];
    const double nu = static_cast<double>(l) / trials;
    m.mean_root += w * std::sqrt(nu);
    m.mean_frequency += w * nu;
  }
  return m;
}

Complex expectation_eta(int trials, double p, double phi) {
  return std::polar(amplitude_moments(trials, p).mean_root, phi);
}

double dispersion_component(int trials, double p, double /*phi*/) {
  const auto m = amplitude_moments(trials, p);
  return std::max(0.0, m.mean_frequency - m.mean_root * m.mean_root);
}

double dispersion_component_literal(int trials, double p, double phi) {
  check_trials(trials);
  const auto weights = binomial_weights(trials, p);
  const Complex mean = expectation_eta(trials, p, phi);
  const double mean_sq = std::norm(mean);
  double sum = 0.0;
  for (int l = 0; l <= trials; ++l) {
    const double nu = static_cast<double>(l) / trials;
    const Complex eta = std::polar(std::sqrt(nu), phi);
    sum += weights[static_cast<std::size_t>(l)] *
           (nu - 2.0 * (std::conj(eta) * mean).real() + mean_sq);
  }
  return sum;
}

DispersionReport DispersionReport::from_components(std::vector<double> per_component, int trials) {
  DispersionReport r;
  r.per_component = std::move(per_component);
  for (double& d : r.per_component) d = std::max(0.0, d);
  r.total = kernels::ordered_sum(r.per_component);
  r.n_scaled_total = trials * r.total;
  r.trials = trials;
  return r;
}

DispersionReport dispersion_total(int trials, const OutcomeDistribution& dist,
                                  const PhaseVector& phases) {
  check_trials(trials);
  if (phases.size() != dist.size())
    throw std::domain_error("phase vector length does not match the outcome count");
  std::vector<double> per(dist.size());
  for (std::size_t j = 0; j < dist.size(); ++j) per[j] = dispersion_component(trials, dist[j], phases[j]);
  return DispersionReport::from_components(std::move(per), trials);
}

DispersionReport dispersion_total(int trials, const OutcomeDistribution& dist) {
  return dispersion_total(trials, dist, PhaseVector::zeros(dist.size()));
}

double asymptotic_dispersion(int outcomes, int trials) {
  if (outcomes < 2) throw std::domain_error("need at least two outcomes");
  check_trials(trials);
  return (outcomes - 1) / (4.0 * trials);
}

}  // namespace bitcred
