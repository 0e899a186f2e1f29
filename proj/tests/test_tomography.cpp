#include "cvqkd/attacks.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/tomography.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvqkd {
namespace {

using testing::Engine;
using testing::uniform;

TomographyDataset synth(const GaussianChannel& ch, std::uint64_t n, std::uint64_t seed) {
  const auto probes = default_probe_displacements();
  return synthesize_dataset(ch, probes, n, seed);
}

GaussianChannel random_cp_channel(Engine& rng) {
  GaussianChannel ch;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ch.gain(i, j) = uniform(rng, -1.5, 1.5);
  Eigen::Matrix2d a;
  a << uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1);
  ch.noise = std::abs(1.0 - ch.gain.determinant()) * Eigen::Matrix2d::Identity() + a * a.transpose();
  ch.displacement_offset = {uniform(rng, -2, 2), uniform(rng, -2, 2)};
  return ch;
}

void expect_channel_near(const GaussianChannel& got, const GaussianChannel& want, double tol) {
  const ChannelDeviation d = deviation(got, want);
  EXPECT_LE(d.gain, tol);
  EXPECT_LE(d.noise, tol);
  EXPECT_LE(d.offset, tol);
}

TEST(EstimateChannel, Identity) {
  const TomographyDataset data = synth(GaussianChannel::identity(), 10000, 1);
  const double sigma = estimation_sigma(data);
  expect_channel_near(estimate_channel(data), GaussianChannel::identity(), 5 * sigma);
}

TEST(EstimateChannel, EntanglingCloner) {
  const GaussianChannel truth = GaussianChannel::entangling_cloner(0.7, 2.0);
  EXPECT_NEAR(truth.gain(0, 0), std::sqrt(0.7), 1e-15);
  EXPECT_NEAR(truth.noise(1, 1), 0.6, 1e-15);
  const TomographyDataset data = synth(truth, 10000, 2);
  expect_channel_near(estimate_channel(data), truth, 5 * estimation_sigma(data));
}

TEST(EstimateChannel, PureLossAddsVacuum) {
  const TomographyDataset data = synth(GaussianChannel::entangling_cloner(0.5, 1.0), 10000, 3);
  const GaussianChannel est = estimate_channel(data);
  const double sigma = estimation_sigma(data);
  EXPECT_NEAR(est.noise(0, 0), 0.5, 5 * sigma);
  EXPECT_NEAR(est.noise(1, 1), 0.5, 5 * sigma);
  EXPECT_NEAR(est.noise(0, 1), 0.0, 5 * sigma);
}

TEST(EstimateChannel, GeneralGainWithOffset) {
  Engine rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianChannel truth = random_cp_channel(rng);
    const TomographyDataset data = synth(truth, 20000, 10 + trial);
    expect_channel_near(estimate_channel(data), truth, 5 * estimation_sigma(data));
  }
}

TEST(EstimateChannel, ErrorShrinksLikeInverseRootN) {
  const GaussianChannel truth = GaussianChannel::entangling_cloner(0.7, 2.0);
  auto rms = [&](std::uint64_t n) {
    double sum = 0;
    constexpr int kSeeds = 12;
    for (int s = 0; s < kSeeds; ++s) {
      const double e = deviation(estimate_channel(synth(truth, n, 100 + s)), truth).max();
      sum += e * e;
    }
    return std::sqrt(sum / kSeeds);
  };
  const double e3 = rms(1000), e4 = rms(10000), e5 = rms(100000);
  const double root10 = std::sqrt(10.0);
  EXPECT_GT(e3 / e4, root10 / 1.6);
  EXPECT_LT(e3 / e4, root10 * 1.6);
  EXPECT_GT(e4 / e5, root10 / 1.6);
  EXPECT_LT(e4 / e5, root10 * 1.6);
}

TEST(EstimateChannel, ProbeOrderDoesNotMatter) {
  TomographyDataset data = synth(GaussianChannel::entangling_cloner(0.6, 1.7), 5000, 5);
  const GaussianChannel a = estimate_channel(data);
  std::reverse(data.probes.begin(), data.probes.end());
  std::rotate(data.probes.begin(), data.probes.begin() + 3, data.probes.end());
  EXPECT_LT(deviation(a, estimate_channel(data)).max(), 1e-12);
}

TEST(EstimateChannel, Errors) {
  const GaussianChannel id = GaussianChannel::identity();
  const std::vector<Eigen::Vector2d> two = {{1, 0}, {0, 1}};
  EXPECT_THROW(estimate_channel(synthesize_dataset(id, two, 2000, 1)), DomainError);
  const std::vector<Eigen::Vector2d> collinear = {{1, 1}, {2, 2}, {-3, -3}, {0, 0}};
  EXPECT_THROW(estimate_channel(synthesize_dataset(id, collinear, 2000, 1)), DomainError);
  EXPECT_THROW(estimate_channel(synth(id, 999, 1)), DomainError);
  EXPECT_THROW(synth(id, 1, 1), DomainError);

  // outputs far narrower than the fitted unit gain allows
  TomographyDataset squeezed = synth(id, 5000, 1);
  for (auto& p : squeezed.probes) p.output_cm = 0.1 * Eigen::Matrix2d::Identity();
  EXPECT_THROW(estimate_channel(squeezed), NumericError);
}

TEST(EstimationSigma, ShrinksWithSamples) {
  const GaussianChannel ch = GaussianChannel::entangling_cloner(0.7, 2.0);
  const double s3 = estimation_sigma(synth(ch, 1000, 1));
  const double s5 = estimation_sigma(synth(ch, 100000, 1));
  EXPECT_GT(s3, 0.0);
  EXPECT_NEAR(s3 / s5, 10.0, 1.0);
}

TEST(Compose, IdentityIsNeutral) {
  const GaussianChannel id = GaussianChannel::identity();
  expect_channel_near(compose(id, id, id), id, 0.0);
  Engine rng(6);
  const GaussianChannel ch = random_cp_channel(rng);
  expect_channel_near(compose(ch, id, id), ch, 1e-15);
  expect_channel_near(compose(id, id, ch), ch, 1e-15);
}

TEST(Compose, TwoCloners) {
  const double t = 0.7, w = 1.5;
  const GaussianChannel c = GaussianChannel::entangling_cloner(t, w);
  const GaussianChannel out = compose(c, GaussianChannel::identity(), c);
  const double noise = (1 - t) * w * t + (1 - t) * w;
  EXPECT_NEAR(out.gain(0, 0), t, 1e-15);
  EXPECT_NEAR(out.gain(1, 1), t, 1e-15);
  EXPECT_NEAR(out.noise(0, 0), noise, 1e-15);
  EXPECT_NEAR(out.noise(1, 1), noise, 1e-15);
  EXPECT_EQ(out.noise(0, 1), 0.0);
}

TEST(Compose, AliceDisplacementIsTracked) {
  const double t = 0.6;
  const GaussianChannel c = GaussianChannel::entangling_cloner(t, 1.2);
  const GaussianChannel out = compose(c, GaussianChannel::displacement({2.0, -1.0}), c);
  EXPECT_NEAR(out.displacement_offset.x(), 2.0 * std::sqrt(t), 1e-15);
  EXPECT_NEAR(out.displacement_offset.y(), -std::sqrt(t), 1e-15);
}

TEST(Compose, AssociativeOnRandomCpChannels) {
  Engine rng(7);
  const GaussianChannel id = GaussianChannel::identity();
  for (int i = 0; i < 200; ++i) {
    const GaussianChannel a = random_cp_channel(rng), b = random_cp_channel(rng),
                          c = random_cp_channel(rng);
    ASSERT_TRUE(a.is_completely_positive(1e-12));
    const GaussianChannel left = compose(compose(a, id, b), id, c);
    const GaussianChannel right = compose(a, id, compose(b, id, c));
    const GaussianChannel middle = compose(a, b, c);
    const double scale = 1.0 + middle.noise.norm() + middle.displacement_offset.norm();
    EXPECT_LT(deviation(left, right).max(), 1e-12 * scale);
    EXPECT_LT(deviation(left, middle).max(), 1e-12 * scale);
    EXPECT_TRUE(middle.is_completely_positive(1e-9 * scale));
  }
}

CorrelatedAttackParams correlated(double tf, double tb, double w, double c) {
  return {AttackParams(tf, w), AttackParams(tb, w), c};
}

ReducibilityReport synthetic_check(const CorrelatedAttackParams& params, std::uint64_t n,
                                   std::uint64_t seed,
                                   const std::vector<Eigen::Vector2d>& probes =
                                       default_probe_displacements()) {
  const TwoModeAttackChannels ch = correlated_two_mode_channels(params);
  const TomographyDataset f = synthesize_dataset(ch.forward, probes, n, 3 * seed);
  const TomographyDataset b = synthesize_dataset(ch.backward, probes, n, 3 * seed + 1);
  const TomographyDataset r = synthesize_dataset(ch.round_trip, probes, n, 3 * seed + 2);
  return check_reducibility(estimate_channel(f), estimate_channel(b), estimate_channel(r),
                            statistical_tolerance(f, b, r));
}

TEST(Reducibility, AnalyticVerdicts) {
  auto verdict = [](const CorrelatedAttackParams& p) {
    const TwoModeAttackChannels ch = correlated_two_mode_channels(p);
    return check_reducibility(ch.forward, ch.backward, ch.round_trip, 1e-9);
  };
  const ReducibilityReport independent = verdict(correlated(0.7, 0.7, 1.5, 0.0));
  EXPECT_EQ(independent.verdict, Verdict::Reducible);
  EXPECT_LT(independent.composition_deviation, 1e-14);
  const ReducibilityReport corr = verdict(correlated(0.7, 0.7, 1.5, 0.9));
  EXPECT_EQ(corr.verdict, Verdict::Irreducible);
  EXPECT_GT(corr.composition_deviation, 0.1);
  EXPECT_EQ(verdict(correlated(0.7, 0.5, 1.5, 0.0)).verdict, Verdict::Asymmetric);
}

TEST(Reducibility, SyntheticVerdicts) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(synthetic_check(correlated(0.7, 0.7, 1.5, 0.0), 10000, seed).verdict,
              Verdict::Reducible);
    EXPECT_EQ(synthetic_check(correlated(0.7, 0.7, 1.5, 0.9), 10000, seed).verdict,
              Verdict::Irreducible);
    EXPECT_EQ(synthetic_check(correlated(0.8, 0.5, 1.5, 0.0), 10000, seed).verdict,
              Verdict::Asymmetric);
  }
}

TEST(Reducibility, IndependentAttackStaysUnderSamplingFloor) {
  const auto probes = default_probe_displacements();
  const TwoModeAttackChannels ch = correlated_two_mode_channels(correlated(0.7, 0.7, 1.5, 0.0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TomographyDataset f = synthesize_dataset(ch.forward, probes, 10000, 3 * seed);
    const TomographyDataset b = synthesize_dataset(ch.backward, probes, 10000, 3 * seed + 1);
    const TomographyDataset r = synthesize_dataset(ch.round_trip, probes, 10000, 3 * seed + 2);
    const double floor = estimation_sigma(f) + estimation_sigma(b) + estimation_sigma(r);
    const ReducibilityReport rep = check_reducibility(estimate_channel(f), estimate_channel(b),
                                                      estimate_channel(r), 5 * floor);
    EXPECT_LT(rep.composition_deviation, 3 * floor);
    EXPECT_LT(rep.symmetry_deviation, 3 * floor);
  }
}

TEST(Reducibility, VerdictDoesNotDependOnProbeSet) {
  std::vector<Eigen::Vector2d> rotated;
  const double angle = std::numbers::pi / 5;
  const Eigen::Rotation2Dd rot(angle);
  for (const auto& p : default_probe_displacements()) rotated.push_back(rot * (1.3 * p));
  for (double c : {0.0, 0.9}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto params = correlated(0.7, 0.7, 1.5, c);
      EXPECT_EQ(synthetic_check(params, 10000, seed).verdict,
                synthetic_check(params, 10000, seed + 50, rotated).verdict)
          << "c=" << c;
    }
  }
}

TEST(Reducibility, RejectsNonPositiveTolerance) {
  const GaussianChannel id = GaussianChannel::identity();
  EXPECT_THROW(check_reducibility(id, id, id, 0.0), DomainError);
  EXPECT_THROW(check_reducibility(id, id, id, -1.0), DomainError);
}

TEST(Verdict, Names) {
  EXPECT_EQ(to_string(Verdict::Reducible), "reducible");
  EXPECT_EQ(to_string(Verdict::Irreducible), "irreducible");
  EXPECT_EQ(to_string(Verdict::Asymmetric), "asymmetric");
}

}  // namespace
}  // namespace cvqkd
