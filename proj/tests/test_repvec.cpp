#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bitcred/repvec.hpp"
#include "oracle.hpp"

using namespace bitcred;

TEST(PhaseVector, Basics) {
  EXPECT_THROW(PhaseVector({0.0, INFINITY}), std::domain_error);
  EXPECT_TRUE(PhaseVector::zeros(3).all_zero());
  EXPECT_FALSE(PhaseVector({0.0, 0.1}).all_zero());
  const auto c = PhaseVector({-std::numbers::pi / 2, 5 * std::numbers::pi}).canonical();
  EXPECT_NEAR(c[0], 1.5 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(c[1], std::numbers::pi, 1e-14);
}

TEST(RepVector, Build) {
  const TrialCounts counts({1, 3});
  const auto nu = build_vector(VectorKind::nu, counts);
  EXPECT_EQ(nu.components[0], Complex(0.25, 0.0));
  EXPECT_EQ(nu.components[1], Complex(0.75, 0.0));
  const auto chi = build_vector(VectorKind::chi, counts);
  EXPECT_NEAR(chi.components[0].real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(chi.components[0].real() + chi.components[1].real(), 1.0, 1e-15);
  const auto eta = build_vector(VectorKind::eta, counts, PhaseVector({0.0, std::numbers::pi / 2}));
  EXPECT_NEAR(eta.components[0].real(), 0.5, 1e-16);
  EXPECT_NEAR(eta.components[1].imag(), std::sqrt(0.75), 1e-16);
  EXPECT_NEAR(std::abs(eta.components[1].real()), 0.0, 1e-16);
}

TEST(RepVector, BuildErrors) {
  const TrialCounts three({1, 1, 1});
  EXPECT_THROW(build_vector(VectorKind::nu, three), std::domain_error);
  EXPECT_THROW(build_vector(VectorKind::chi, TrialCounts({1, 1}), PhaseVector({0.1, 0.0})),
               std::domain_error);
  EXPECT_THROW(build_vector(VectorKind::eta, three, PhaseVector::zeros(2)), std::domain_error);
}

TEST(RepVector, EtaHasUnitNorm) {
  for (auto c : {std::vector<int>{1, 0}, {3, 7}, {1, 2, 3, 4}, {0, 0, 9}, {123, 456, 789, 1}}) {
    const TrialCounts counts(c);
    std::vector<double> ph(c.size());
    for (std::size_t j = 0; j < ph.size(); ++j) ph[j] = 0.7 * static_cast<double>(j) - 1.3;
    EXPECT_NEAR(build_vector(VectorKind::eta, counts, PhaseVector(ph)).norm(), 1.0, 1e-15);
  }
}

TEST(Endpoint, ChiMatchesArcsineAndEta) {
  for (double p : {0.05, 0.3, 0.5, 0.77}) {
    EXPECT_NEAR(endpoint_prob(VectorKind::chi, 4000, p, BitBudget(6)),
                prob_bits_correct(EncodingKind::arcsine, 4000, p, BitBudget(6)), 1e-15);
    EXPECT_NEAR(endpoint_prob(VectorKind::nu, 4000, p, BitBudget(6)),
                prob_bits_correct(EncodingKind::frequency, 4000, p, BitBudget(6)), 1e-15);
  }
  EXPECT_NEAR(endpoint_prob(VectorKind::eta, 4000, 0.3, BitBudget(6)), 0.87944753421247454, 1e-13);
  EXPECT_NEAR(endpoint_prob(VectorKind::eta, 4000, 0.3, BitBudget(1)), 1.0, 1e-13);
}

TEST(Moments, ReferenceValues) {
  const auto m = amplitude_moments(10, 0.3);
  EXPECT_NEAR(m.mean_root, 0.52561970132477887, 1e-15);
  EXPECT_NEAR(m.mean_frequency, 0.3, 1e-15);
  EXPECT_LT(m.mean_root, std::sqrt(0.3));
  const auto e = expectation_eta(10, 0.3, std::numbers::pi / 2);
  EXPECT_NEAR(e.imag(), 0.52561970132477887, 1e-15);
}

TEST(Dispersion, ReferenceValues) {
  EXPECT_NEAR(100 * dispersion_component(100, 0.02), 0.38350028858803791, 1e-9);
  EXPECT_NEAR(4000 * dispersion_component(4000, 0.02), 0.24617690469244369, 1e-9);
  EXPECT_NEAR(4000 * dispersion_component(4000, 0.5), 0.12502735718905853, 1e-9);
  EXPECT_NEAR(dispersion_total(4000, OutcomeDistribution::uniform(2)).n_scaled_total,
              0.25005471437811707, 1e-9);
  EXPECT_NEAR(dispersion_total(4000, OutcomeDistribution::uniform(3)).n_scaled_total,
              0.50015638104934004, 1e-9);
  EXPECT_NEAR(dispersion_total(4000, OutcomeDistribution::uniform(4)).n_scaled_total,
              0.75030505005919501, 1e-9);
}

TEST(Dispersion, PhaseIndependent) {
  for (double p : {0.01, 0.2, 0.5, 0.93}) {
    const double base = dispersion_component(500, p, 0.0);
    for (double phi : {0.3, -2.0, 17.0}) {
      EXPECT_EQ(dispersion_component(500, p, phi), base);
      EXPECT_NEAR(dispersion_component_literal(500, p, phi), base, 1e-15);
    }
  }
}

TEST(Dispersion, DegenerateAndBounds) {
  EXPECT_EQ(dispersion_component(4000, 0.0), 0.0);
  EXPECT_EQ(dispersion_component(4000, 1.0), 0.0);
  for (double p : {0.001, 0.5, 0.999}) EXPECT_GE(dispersion_component(7, p), 0.0);
}

TEST(Dispersion, MatchesSequenceOracle) {
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> phases{0.0, 1.0, -0.5, 2.5};
  const auto ref = oracle::sequence_moments(5, probs, phases);
  const auto rep = dispersion_total(5, OutcomeDistribution(probs), PhaseVector(phases));
  long double total = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(rep.per_component[j], static_cast<double>(ref.spread[j]), 1e-14);
    total += ref.spread[j];
  }
  EXPECT_NEAR(rep.n_scaled_total, 1.2232733176074066, 1e-13);
  EXPECT_NEAR(rep.total, static_cast<double>(total), 1e-14);
}

TEST(Dispersion, Asymptote) {
  EXPECT_EQ(asymptotic_dispersion(2, 4000), 1.0 / 16000.0);
  EXPECT_EQ(asymptotic_dispersion(4, 100), 0.0075);
  EXPECT_THROW(asymptotic_dispersion(1, 100), std::domain_error);
  const auto r = DispersionReport::from_components({0.1, -1e-18}, 10);
  EXPECT_EQ(r.per_component[1], 0.0);
  EXPECT_EQ(r.n_scaled_total, 1.0);
}
