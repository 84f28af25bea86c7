#include "bitcred/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bitcred/kernels.hpp"
#include "bitcred/rng.hpp"

namespace bitcred {

namespace {

constexpr double kUnitarityTolerance = 1e-10;

double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

void check_inputs(int trials, const OutcomeDistribution& dist, const PhaseVector& phases) {
  if (trials < 1) throw std::domain_error("trial count must be positive");
  if (phases.size() != dist.size())
    throw std::invalid_argument("phase vector length does not match the outcome count");
}

// Single-component moments plus E sqrt(L_j L_l) / N for every pair.
struct JointMoments {
  std::size_t dim = 0;
  std::vector<AmplitudeMoments> single;
  std::vector<double> cross;  // row-major; diagonal holds E L_j / N

  double operator()(std::size_t j, std::size_t l) const { return cross[j * dim + l]; }
};

JointMoments joint_moments(int trials, const OutcomeDistribution& dist, double tail_mass) {
  const std::size_t k = dist.size();
  JointMoments m{k, std::vector<AmplitudeMoments>(k), std::vector<double>(k * k, 0.0)};
  for (std::size_t j = 0; j < k; ++j) {
    m.single[j] = amplitude_moments(trials, dist[j]);
    m.cross[j * k + j] = m.single[j].mean_frequency;
  }
  const double n = trials;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      double value = 0.0;
      if (k == 2) {
        // L_2 = N - L_1: a single binomial sum.
        const auto w = binomial_weights(trials, dist[0]);
        for (int c = 0; c <= trials; ++c)
          value += w[static_cast<std::size_t>(c)] * std::sqrt(static_cast<double>(c) * (trials - c)) / n;
      } else {
        value = kernels::trinomial_expectation(trials, dist[j], dist[l], tail_mass, [n](int a, int b) {
                  return std::sqrt(static_cast<double>(a) * b) / n;
                }).value;
      }
      m.cross[j * k + l] = value;
      m.cross[l * k + j] = value;
    }
  }
  return m;
}

// Re sum_{j,l} U_kj U_kl^* X_jl for every row k.
std::vector<double> row_quadratic_forms(const UnitaryK& u, std::span<const Complex> x) {
  const std::size_t k = u.dim();
  std::vector<double> out(k);
  for (std::size_t row = 0; row < k; ++row) {
    Complex sum(0.0, 0.0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) sum += u(row, j) * std::conj(u(row, l)) * x[j * k + l];
    out[row] = sum.real();
  }
  return out;
}

void check_transform_dims(const OutcomeDistribution& dist, const UnitaryK& u) {
  if (u.dim() != dist.size())
    throw std::invalid_argument("unitary dimension " + std::to_string(u.dim()) +
                                " does not match outcome count " + std::to_string(dist.size()));
}

}  // namespace

Rotation2Params Rotation2Params::from_degrees(double tau_deg, double theta_deg, double phi_deg) {
  constexpr double rad = std::numbers::pi / 180.0;
  return {tau_deg * rad, theta_deg * rad, phi_deg * rad};
}

Rotation2Params Rotation2Params::canonical() const {
  double t = wrap_two_pi(tau);
  double nx = std::sin(theta) * std::cos(phi);
  double ny = std::sin(theta) * std::sin(phi);
  double nz = std::cos(theta);
  if (t > std::numbers::pi) {
    t = 2.0 * std::numbers::pi - t;
    nx = -nx;
    ny = -ny;
    nz = -nz;
  }
  if (t == 0.0) return {0.0, 0.0, 0.0};
  const double polar = std::acos(std::clamp(nz, -1.0, 1.0));
  const double azimuth = (nx == 0.0 && ny == 0.0) ? 0.0 : wrap_two_pi(std::atan2(ny, nx));
  return {t, polar, azimuth};
}

Complex Unitary2::operator()(int row, int col) const {
  if (row == 0) return col == 0 ? a : b;
  return col == 0 ? -std::conj(b) : std::conj(a);
}

double Unitary2::unit_residual() const { return std::abs(std::norm(a) + std::norm(b) - 1.0); }

Unitary2 rotation2(const Rotation2Params& params) {
  const double c = std::cos(params.tau);
  const double s = std::sin(params.tau);
  return {Complex(c, s * std::cos(params.theta)), std::polar(s * std::sin(params.theta), -params.phi)};
}

UnitaryK UnitaryK::identity(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("unitary dimension must be positive");
  std::vector<Complex> e(dim * dim, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = Complex(1.0, 0.0);
  return UnitaryK(dim, std::move(e));
}

UnitaryK UnitaryK::from_entries(std::size_t dim, std::vector<Complex> entries) {
  if (dim == 0 || entries.size() != dim * dim)
    throw std::invalid_argument("entry count does not match dimension");
  UnitaryK u(dim, std::move(entries));
  if (!(u.unitarity_residual() <= kUnitarityTolerance))
    throw std::domain_error("matrix is not unitary");
  return u;
}

double UnitaryK::unitarity_residual() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      Complex sum(0.0, 0.0);
      for (std::size_t m = 0; m < dim_; ++m) sum += (*this)(r, m) * std::conj((*this)(c, m));
      if (r == c) sum -= 1.0;
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

UnitaryK operator*(const UnitaryK& lhs, const UnitaryK& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("unitary dimension mismatch");
  const std::size_t k = lhs.dim_;
  std::vector<Complex> e(k * k, Complex(0.0, 0.0));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t m = 0; m < k; ++m) {
      const Complex x = lhs(r, m);
      if (x == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < k; ++c) e[r * k + c] += x * rhs(m, c);
    }
  return UnitaryK(k, std::move(e));
}

UnitaryK embed(const EmbeddedRotation& er) {
  if (!(er.i < er.j && er.j < er.dim))
    throw std::domain_error("embedded rotation needs 0 <= i < j < dim, got (" +
                            std::to_string(er.i) + ", " + std::to_string(er.j) + ") in dim " +
                            std::to_string(er.dim));
  std::vector<Complex> e(er.dim * er.dim, Complex(0.0, 0.0));
  for (std::size_t d = 0; d < er.dim; ++d) e[d * er.dim + d] = Complex(1.0, 0.0);
  const std::size_t idx[2] = {er.i, er.j};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) e[idx[r] * er.dim + idx[c]] = er.rot(r, c);
  return UnitaryK::from_entries(er.dim, std::move(e));
}

UnitaryK compose(std::size_t dim, std::span<const EmbeddedRotation> factors) {
  UnitaryK result = UnitaryK::identity(dim);
  for (const auto& f : factors) {
    if (f.dim != dim)
      throw std::invalid_argument("factor dimension " + std::to_string(f.dim) +
                                  " does not match " + std::to_string(dim));
    result = embed(f) * result;
  }
  return result;
}

RepVector apply(const UnitaryK& u, const RepVector& v) {
  if (v.kind != VectorKind::eta) throw std::domain_error("only eta vectors can be transformed");
  if (v.size() != u.dim()) throw std::invalid_argument("vector and unitary dimensions differ");
  RepVector out{VectorKind::eta, std::vector<Complex>(u.dim(), Complex(0.0, 0.0))};
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c) out.components[r] += u(r, c) * v.components[c];
  return out;
}

std::vector<EmbeddedRotation> random_factors(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim < 2) throw std::domain_error("random factors need dim >= 2");
  auto engine = stream_engine(seed, 0);
  std::vector<EmbeddedRotation> out;
  out.reserve(count);
  constexpr double pi = std::numbers::pi;
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t i = static_cast<std::size_t>(uniform01(engine) * dim);
    std::size_t j = static_cast<std::size_t>(uniform01(engine) * (dim - 1));
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    const Rotation2Params params{2.0 * pi * uniform01(engine), pi * uniform01(engine),
                                 2.0 * pi * uniform01(engine)};
    out.push_back({i, j, rotation2(params), dim});
  }
  return out;
}

std::vector<Complex> amplitude_covariance(int trials, const OutcomeDistribution& dist,
                                          const PhaseVector& phases, double tail_mass) {
  check_inputs(trials, dist, phases);
  const auto m = joint_moments(trials, dist, tail_mass);
  const std::size_t k = dist.size();
  std::vector<Complex> cov(k * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      const double mean_prod = m.single[j].mean_root * m.single[l].mean_root;
      if (j == l) {
        cov[j * k + l] = Complex(m(j, j) - mean_prod, 0.0);
      } else {
        cov[j * k + l] = std::polar(1.0, phases[j] - phases[l]) * (m(j, l) - mean_prod);
      }
    }
  }
  return cov;
}

DispersionReport dispersion_transformed(int trials, const OutcomeDistribution& dist,
                                        const PhaseVector& phases, const UnitaryK& u,
                                        double tail_mass) {
  check_transform_dims(dist, u);
  const auto cov = amplitude_covariance(trials, dist, phases, tail_mass);
  return DispersionReport::from_components(row_quadratic_forms(u, cov), trials);
}

DispersionReport dispersion_transformed_raw(int trials, const OutcomeDistribution& dist,
                                            const PhaseVector& phases, const UnitaryK& u,
                                            double tail_mass) {
  check_inputs(trials, dist, phases);
  check_transform_dims(dist, u);
  const auto m = joint_moments(trials, dist, tail_mass);
  const std::size_t k = dist.size();
  std::vector<Complex> second(k * k);
  std::vector<Complex> mean(k);
  for (std::size_t j = 0; j < k; ++j) {
    mean[j] = std::polar(m.single[j].mean_root, phases[j]);
    for (std::size_t l = 0; l < k; ++l)
      second[j * k + l] = std::polar(m(j, l), phases[j] - phases[l]);
  }
  auto per = row_quadratic_forms(u, second);
  for (std::size_t row = 0; row < k; ++row) {
    Complex mean_psi(0.0, 0.0);
    for (std::size_t j = 0; j < k; ++j) mean_psi += u(row, j) * mean[j];
    per[row] -= std::norm(mean_psi);
  }
  return DispersionReport::from_components(std::move(per), trials);
}

PairDispersion pair_dispersion(int trials, const OutcomeDistribution& dist,
                               const PhaseVector& phases, const EmbeddedRotation& er) {
  check_inputs(trials, dist, phases);
  if (er.dim != dist.size()) throw std::invalid_argument("rotation dimension does not match");
  if (!(er.i < er.j && er.j < er.dim)) throw std::domain_error("embedded rotation indices out of range");
  const Complex a = er.rot.a;
  const Complex b = er.rot.b;
  const Complex mean_i = expectation_eta(trials, dist[er.i], phases[er.i]);
  const Complex mean_j = expectation_eta(trials, dist[er.j], phases[er.j]);
  const Complex mean_ip = a * mean_i + b * mean_j;
  const Complex mean_jp = -std::conj(b) * mean_i + std::conj(a) * mean_j;
  const double n = trials;

  struct Terms {
    double before, after, after_reduced;
  };
  auto terms = [&](int li, int lj) {
    const Complex ei = std::polar(std::sqrt(li / n), phases[er.i]);
    const Complex ej = std::polar(std::sqrt(lj / n), phases[er.j]);
    const Complex ip = a * ei + b * ej;
    const Complex jp = -std::conj(b) * ei + std::conj(a) * ej;
    const double reduced = std::norm(ei) + std::norm(ej) + std::norm(mean_i) + std::norm(mean_j) -
                           2.0 * (ei * std::conj(mean_i) + ej * std::conj(mean_j)).real();
    return Terms{std::norm(ei - mean_i) + std::norm(ej - mean_j),
                 std::norm(ip - mean_ip) + std::norm(jp - mean_jp), reduced};
  };

  PairDispersion out;
  if (dist.size() == 2) {
    const auto w = binomial_weights(trials, dist[er.i]);
    for (int l = 0; l <= trials; ++l) {
      const Terms t = terms(l, trials - l);
      const double wl = w[static_cast<std::size_t>(l)];
      out.before += wl * t.before;
      out.after += wl * t.after;
      out.after_reduced += wl * t.after_reduced;
    }
    return out;
  }
  const double pi = dist[er.i];
  const double pj = dist[er.j];
  out.before = kernels::trinomial_expectation(trials, pi, pj, 0.0, [&](int li, int lj) { return terms(li, lj).before; }).value;
  out.after = kernels::trinomial_expectation(trials, pi, pj, 0.0, [&](int li, int lj) { return terms(li, lj).after; }).value;
  out.after_reduced = kernels::trinomial_expectation(trials, pi, pj, 0.0, [&](int li, int lj) { return terms(li, lj).after_reduced; }).value;
  return out;
}

ConservationResult conservation_check(int trials, const OutcomeDistribution& dist,
                                      const PhaseVector& phases, const UnitaryK& u) {
  ConservationResult r;
  r.total_before = dispersion_total(trials, dist, phases).total;
  r.total_after = dispersion_transformed(trials, dist, phases, u).total;
  r.abs_difference = std::abs(r.total_after - r.total_before);
  return r;
}

}  // namespace bitcred
