#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bitcred/mc.hpp"

using namespace bitcred;

TEST(Rng, SplitmixReferenceOutput) {
  // First output of the published SplitMix64 generator from state 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(kGeneratorId, "mt19937_64+splitmix64");
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  auto a = stream_engine(42, 0), b = stream_engine(42, 0), c = stream_engine(42, 1), d = stream_engine(43, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  auto e = stream_engine(1, 2);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(e);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Sampler, CountsAddUp) {
  const SamplerConfig cfg{7, 10};
  const OutcomeDistribution d({0.2, 0.3, 0.5});
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(sample_counts(250, d, cfg, r).total(), 250);
  EXPECT_EQ(sample_counts(250, d, cfg, 3), sample_counts(250, d, cfg, 3));
  EXPECT_EQ(sample_counts(50, OutcomeDistribution({1.0, 0.0}), cfg, 0), TrialCounts({50, 0}));
  EXPECT_EQ(sample_counts(50, OutcomeDistribution({0.0, 0.0, 1.0}), cfg, 0), TrialCounts({0, 0, 50}));
  const auto stream = sample_stream(250, d, cfg);
  ASSERT_EQ(stream.size(), 10u);
  EXPECT_EQ(stream[4], sample_counts(250, d, cfg, 4));
  EXPECT_THROW(sample_counts(0, d, cfg, 0), std::domain_error);
}

TEST(Sampler, MeanCountMatchesProbability) {
  const SamplerConfig cfg{11, 4000};
  const OutcomeDistribution d({0.15, 0.25, 0.6});
  std::vector<double> first;
  for (const auto& c : sample_stream(100, d, cfg)) first.push_back(c[0]);
  const auto est = summarize(first);
  EXPECT_TRUE(est.covers(15.0, 4.0)) << est.mean << " " << est.std_error;
  EXPECT_NEAR(est.std_error, std::sqrt(100 * 0.15 * 0.85 / 4000.0), 0.002);
}

TEST(Summarize, KnownValues) {
  const auto e = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(e.replications, 4u);
  const auto one = summarize({0.3});
  EXPECT_EQ(one.std_error, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(one.covers(1e9));
  EXPECT_THROW(summarize({}), std::domain_error);
  EXPECT_THROW(SamplerConfig({1, 0}).validate(), std::domain_error);
}

TEST(McProbBits, CoversExact) {
  const SamplerConfig cfg{42, 4000};
  for (auto kind : {EncodingKind::frequency, EncodingKind::amplitude, EncodingKind::arcsine}) {
    const double exact = prob_bits_correct(kind, 1000, 0.3, BitBudget(5));
    const auto est = mc_prob_bits(kind, 1000, 0.3, BitBudget(5), cfg);
    EXPECT_TRUE(est.covers(exact, 4.0)) << to_string(kind) << " " << est.mean << " " << exact;
    EXPECT_EQ(est.generator, kGeneratorId);
  }
  const auto deg = mc_prob_bits(EncodingKind::amplitude, 1000, 1.0, BitBudget(6), cfg);
  EXPECT_EQ(deg.mean, 1.0);
  EXPECT_EQ(deg.std_error, 0.0);
}

TEST(McDispersion, CoversExact) {
  const SamplerConfig cfg{42, 4000};
  const OutcomeDistribution d({0.2, 0.3, 0.5});
  const PhaseVector ph({0.0, 1.0, 2.0});
  const auto exact = dispersion_total(300, d, ph).total;
  EXPECT_TRUE(mc_dispersion(300, d, ph, std::nullopt, cfg).covers(exact, 4.0));
  const auto u = compose(3, random_factors(3, 4, 5));
  const auto exact_u = dispersion_transformed(300, d, ph, u).total;
  EXPECT_TRUE(mc_dispersion(300, d, ph, u, cfg).covers(exact_u, 4.0));
  const auto point = mc_dispersion(300, OutcomeDistribution({0.0, 1.0, 0.0}), ph, u, cfg);
  EXPECT_EQ(point.mean, 0.0);
  EXPECT_THROW(mc_dispersion(300, d, PhaseVector::zeros(2), std::nullopt, cfg), std::invalid_argument);
  EXPECT_THROW(mc_dispersion(300, d, ph, UnitaryK::identity(2), cfg), std::invalid_argument);
}

TEST(McDispersion, IndependentOfThreadCount) {
  const SamplerConfig cfg{9, 500};
  const OutcomeDistribution d({0.1, 0.9});
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = mc_dispersion(200, d, PhaseVector::zeros(2), std::nullopt, cfg);
  const auto p1 = mc_prob_bits(EncodingKind::arcsine, 200, 0.1, BitBudget(3), cfg);
  omp_set_num_threads(4);
  const auto four = mc_dispersion(200, d, PhaseVector::zeros(2), std::nullopt, cfg);
  const auto p4 = mc_prob_bits(EncodingKind::arcsine, 200, 0.1, BitBudget(3), cfg);
  omp_set_num_threads(saved);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.std_error, four.std_error);
  EXPECT_EQ(p1.mean, p4.mean);
}
