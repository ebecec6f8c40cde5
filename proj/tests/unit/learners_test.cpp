#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "poisonlab/errors.hpp"
#include "poisonlab/learners.hpp"

using namespace poisonlab;

namespace {

HypothesisClass constants() {
  return HypothesisClass(1, {Hypothesis::constant(1, Label::Minus), Hypothesis::constant(1, Label::Plus)});
}

Sample at_zero(std::size_t plus, std::size_t minus) {
  std::vector<Example> items;
  for (std::size_t i = 0; i < plus; ++i) items.push_back({Point{0}, Label::Plus});
  for (std::size_t i = 0; i < minus; ++i) items.push_back({Point{0}, Label::Minus});
  return Sample(items);
}

}  // namespace

TEST(ExpMechanism, TwoHypothesisSoftmax) {
  ExpMechanismConfig cfg{0.1, 1.0};
  const auto p = exp_mechanism_dist(constants(), at_zero(1, 0), cfg);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[1], 0.73105857863000487925, 1e-15);
  EXPECT_NEAR(p[0], 0.26894142136999512075, 1e-15);
}

TEST(ExpMechanism, TemperatureFormula) {
  ExpMechanismConfig cfg{1.0 / 64, std::nullopt};
  EXPECT_NEAR(cfg.temperature(2), 6.6604368892615820508, 1e-13);
  EXPECT_EQ(cfg.temperature(1), 0.0);
  EXPECT_THROW((ExpMechanismConfig{0.0, std::nullopt}.validate()), PreconditionError);
  EXPECT_THROW((ExpMechanismConfig{0.1, -1.0}.validate()), PreconditionError);
}

TEST(ExpMechanism, LogDistStaysFiniteWhenWeightsUnderflow) {
  ExpMechanismConfig cfg{0.1, 1e5};
  const auto logp = exp_mechanism_log_dist(constants(), at_zero(10, 0), cfg);
  EXPECT_TRUE(std::isfinite(logp[0]));
  EXPECT_NEAR(logp[0], -1e5, 1e-6);
  EXPECT_NEAR(logp[1], 0.0, 1e-12);
  const auto p = exp_mechanism_dist(constants(), at_zero(10, 0), cfg);
  EXPECT_EQ(p[1], 1.0);
}

TEST(ExpMechanism, SingletonClassIsDeterministic) {
  const HypothesisClass one(1, {Hypothesis::constant(1, Label::Minus)});
  const auto p = exp_mechanism_dist(one, at_zero(3, 0), ExpMechanismConfig{0.1, std::nullopt});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], 1.0);
}

TEST(ExpMechanism, PredictProbSumsPlusMass) {
  const auto hs = HypothesisClass::all_labelings(3);
  const Sample s({{Point{0}, Label::Plus}, {Point{1}, Label::Minus}, {Point{2}, Label::Plus}, {Point{0}, Label::Minus}});
  const ExpMechanismConfig cfg{1.0 / 16, std::nullopt};
  const auto p = exp_mechanism_dist(hs, s, cfg);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-14);
  for (std::size_t x = 0; x < 3; ++x) {
    double plus = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) plus += hs[i](Point{x}) == Label::Plus ? p[i] : 0.0;
    EXPECT_NEAR(predict_prob(hs, s, Point{x}, cfg).p_plus, plus, 1e-14);
  }
  EXPECT_THROW(predict_prob(hs, s, Point{3}, cfg), DomainMismatchError);
}

TEST(ExpMechanism, SamplingFrequencyMatchesDistribution) {
  const ExpMechanismConfig cfg{0.1, 1.0};
  RandomSource rng(31);
  const int draws = 200'000;
  int plus = 0;
  for (int j = 0; j < draws; ++j) plus += exp_mechanism_sample_index(constants(), at_zero(1, 0), cfg, rng) == 1;
  // sd ~ 0.001
  EXPECT_NEAR(plus / static_cast<double>(draws), 0.731058578630, 0.005);
}

TEST(Coupled, ThresholdRule) {
  EXPECT_EQ(coupled_predict(0.3, 0.3), Label::Plus);
  EXPECT_EQ(coupled_predict(0.3, 0.31), Label::Minus);
  EXPECT_EQ(coupled_predict(0.0, 0.0), Label::Plus);
  EXPECT_EQ(coupled_predict(1.0, 1.0), Label::Plus);
  EXPECT_THROW(coupled_predict(0.5, 1.5), PreconditionError);
}

TEST(Coupled, FlipProbabilityIsGapInPlusProbability) {
  const double p = 0.62, q = 0.41;
  RandomSource rng(2);
  const int draws = 200'000;
  int flips = 0;
  for (int j = 0; j < draws; ++j) {
    const double r = rng.uniform01();
    flips += coupled_predict(p, r) != coupled_predict(q, r);
  }
  EXPECT_NEAR(flips / static_cast<double>(draws), 0.21, 0.005);
}

TEST(VcLearner, SubsetSizeExamples) {
  EXPECT_EQ((VcLearnerConfig{1.0 / 64, 1}.subset_size()), 4u);
  EXPECT_EQ((VcLearnerConfig{1.0 / 256, 4}.subset_size()), 16u);
  EXPECT_EQ((VcLearnerConfig{1.0 / 16, 1}.subset_size()), 2u);
  EXPECT_THROW((VcLearnerConfig{0.25, 1}.validate()), PreconditionError);
  EXPECT_THROW((VcLearnerConfig{1.0 / 16, 0}.validate()), PreconditionError);
}

TEST(VcLearner, SampleSizeChecks) {
  const VcLearnerConfig cfg{1.0 / 16, 1};
  EXPECT_THROW(cfg.check_sample_size(8), PreconditionError);
  EXPECT_NO_THROW(cfg.check_sample_size(16));
  EXPECT_EQ(VcLearnerConfig::first_half(17), 8u);
  EXPECT_EQ(VcLearnerConfig::second_half(17), 9u);
}

TEST(VcLearner, ConstantsOnOnePointReduceToSoftmaxOverSecondHalf) {
  // Second half has 6 plus, 2 minus; every subset keeps both constants.
  const VcLearnerConfig cfg{1.0 / 16, 1};
  const Sample s = [] {
    std::vector<Example> items(8, Example{Point{0}, Label::Minus});
    for (int i = 0; i < 6; ++i) items.push_back({Point{0}, Label::Plus});
    for (int i = 0; i < 2; ++i) items.push_back({Point{0}, Label::Minus});
    return Sample(items);
  }();
  EXPECT_NEAR(vc_learner_exact_p_plus(constants(), s, Point{0}, cfg), 0.84092266368867052548, 1e-14);
}

TEST(VcLearner, ExactIsAverageOverSubsets) {
  const auto hs = HypothesisClass::all_labelings(2);
  const VcLearnerConfig cfg{1.0 / 16, 2};  // k = floor(sqrt(8)) = 2
  RandomSource rng(17);
  std::vector<Example> items(16);
  for (auto& z : items) z = {Point{rng.uniform_index(2)}, rng.fair_coin() ? Label::Plus : Label::Minus};
  const Sample s(items);
  double total = 0.0;
  int count = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b) {
      const std::size_t j[2] = {a, b};
      total += vc_learner_p_plus_given_subset(hs, s, Point{1}, cfg, j);
      ++count;
    }
  EXPECT_EQ(count, 28);
  EXPECT_NEAR(vc_learner_exact_p_plus(hs, s, Point{1}, cfg), total / count, 1e-14);
}

TEST(VcLearner, PredictFrequencyMatchesExact) {
  const auto hs = HypothesisClass::all_labelings(2);
  const VcLearnerConfig cfg{1.0 / 16, 2};
  RandomSource gen(5);
  std::vector<Example> items(16);
  for (auto& z : items) z = {Point{gen.uniform_index(2)}, gen.bernoulli(0.7) ? Label::Plus : Label::Minus};
  const Sample s(items);
  const double exact = vc_learner_exact_p_plus(hs, s, Point{0}, cfg);
  const RandomSource root(99);
  const int draws = 40'000;
  int plus = 0;
  for (int j = 0; j < draws; ++j) plus += vc_learner_predict(hs, s, Point{0}, cfg, root.substream(j)) == Label::Plus;
  EXPECT_NEAR(plus / static_cast<double>(draws), exact, 4.0 * std::sqrt(0.25 / draws));
}

TEST(VcLearner, LearnerReportsNulloptPastEnumerationCap) {
  const auto learner = make_vc_learner(constants(), VcLearnerConfig{1.0 / 1024, 1});  // k = 16
  const Sample s = at_zero(1024, 1024);
  EXPECT_FALSE(learner->exact_plus_probability(s, Point{0}).has_value());
}

TEST(Majority, HypergeometricExamples) {
  const Sample s = at_zero(3, 2);
  // k = 3: 7 of the 10 triples hold at least two plus labels.
  EXPECT_NEAR(majority_subsample_p_plus(s, 3, Point{0}), 0.7, 1e-15);
  // k = 2: 3 plus pairs, 6 mixed pairs decided by a coin.
  EXPECT_NEAR(majority_subsample_p_plus(s, 2, Point{0}), 0.6, 1e-15);
  // Fewer than k examples at x: vote over all 5.
  EXPECT_EQ(majority_subsample_p_plus(s, 9, Point{0}), 1.0);
  EXPECT_EQ(majority_subsample_p_plus(s, 3, Point{1}), 0.5);
  EXPECT_EQ(majority_subsample_p_plus(at_zero(2, 2), 9, Point{0}), 0.5);
  EXPECT_THROW(majority_subsample_p_plus(s, 0, Point{0}), PreconditionError);
}

TEST(Majority, PredictFrequencyMatchesExact) {
  const Sample s = at_zero(3, 2);
  RandomSource rng(13);
  const int draws = 100'000;
  int plus = 0;
  for (int j = 0; j < draws; ++j) plus += majority_subsample_predict(s, 2, Point{0}, rng) == Label::Plus;
  EXPECT_NEAR(plus / static_cast<double>(draws), 0.6, 0.007);
}

TEST(PublicTransform, ThresholdsTheOracle) {
  const PlusProbabilityOracle oracle = [](const Sample&, Point) { return 0.25; };
  const Sample s = at_zero(1, 0);
  EXPECT_EQ(public_transform(oracle, s, Point{0}, 0.2), Label::Plus);
  EXPECT_EQ(public_transform(oracle, s, Point{0}, 0.3), Label::Minus);
}

TEST(MonteCarloOracle, DeterministicFunctionOfArguments) {
  const PrivateLearnerFn coin = [](const Sample&, Point, RandomSource& r) {
    return r.bernoulli(0.3) ? Label::Plus : Label::Minus;
  };
  const auto info = monte_carlo_oracle(coin, 4096);
  EXPECT_FALSE(info.exact);
  EXPECT_EQ(info.inner_draws, 4096u);
  const Sample s = at_zero(2, 1);
  const double a = info.oracle(s, Point{0});
  EXPECT_EQ(a, info.oracle(s, Point{0}));
  EXPECT_NEAR(a, 0.3, 4.0 * std::sqrt(0.21 / 4096));
  EXPECT_THROW(monte_carlo_oracle(coin, 0), PreconditionError);
}

TEST(Learners, PublicLearnerUsesExactOracleWhenAvailable) {
  std::shared_ptr<const Learner> priv = make_majority_learner(3);
  const auto pub = make_public_learner(priv);
  const Sample s = at_zero(3, 2);
  RandomSource rng(1);
  EXPECT_NEAR(pub->plus_probability(s, Point{0}, rng), 0.7, 1e-15);
  EXPECT_NEAR(*pub->exact_plus_probability(s, Point{0}), 0.7, 1e-15);
}

TEST(Learners, ConstantAndBayes) {
  RandomSource rng(1);
  const Sample s = at_zero(1, 0);
  EXPECT_EQ(make_constant_learner(1.0)->plus_probability(s, Point{0}, rng), 1.0);
  const auto bayes = make_bayes_learner(BiasVector({0.1, -0.2, 0.0}));
  EXPECT_EQ(bayes->plus_probability(s, Point{0}, rng), 1.0);
  EXPECT_EQ(bayes->plus_probability(s, Point{1}, rng), 0.0);
  EXPECT_EQ(bayes->plus_probability(s, Point{2}, rng), 0.5);
}

TEST(Learners, ExpLearnerExactMatchesPredictProb) {
  const auto hs = HypothesisClass::all_labelings(2);
  const ExpMechanismConfig cfg{1.0 / 32, std::nullopt};
  const auto learner = make_exp_mechanism_learner(hs, cfg);
  const Sample s({{Point{0}, Label::Plus}, {Point{1}, Label::Plus}, {Point{1}, Label::Minus}});
  RandomSource rng(3);
  const double p = predict_prob(hs, s, Point{1}, cfg).p_plus;
  EXPECT_DOUBLE_EQ(learner->plus_probability(s, Point{1}, rng), p);
  EXPECT_DOUBLE_EQ(*learner->exact_plus_probability(s, Point{1}), p);
}
