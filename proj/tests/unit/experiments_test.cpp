#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "poisonlab/errors.hpp"
#include "poisonlab/experiments.hpp"

using namespace poisonlab;

namespace {

// Rewrites every example, which no positive budget below 1 allows.
class RewriteAll : public Adversary {
 public:
  std::string id() const override { return "rewrite-all"; }
  Sample attack(const Sample& s, const Example& target, const AttackBudget&, const Learner&) const override {
    std::vector<Example> items(s.size(), Example{target.point, opposite(target.label)});
    return Sample(items);
  }
};

}  // namespace

TEST(Summarize, NormalInterval) {
  const std::vector<double> v = {0.0, 1.0, 0.0, 1.0};
  const auto e = summarize(v, 3, {{"k", "v"}});
  EXPECT_DOUBLE_EQ(e.mean, 0.5);
  EXPECT_NEAR(e.std_error, std::sqrt(1.0 / 12.0), 1e-15);
  EXPECT_NEAR(e.half_width(), kZ95 * std::sqrt(1.0 / 12.0), 1e-15);
  EXPECT_EQ(e.trials, 4u);
  EXPECT_EQ(e.seed, 3u);
  EXPECT_EQ(e.metadata.at("k"), "v");
  EXPECT_THROW(summarize(std::vector<double>{}, 0, {}), PreconditionError);
}

TEST(Summarize, WilsonIntervalForDegenerateProportion) {
  const std::vector<double> zeros(100, 0.0);
  const auto e = summarize(zeros, 0, {}, true);
  EXPECT_EQ(e.ci_low, 0.0);
  EXPECT_NEAR(e.ci_high, kZ95 * kZ95 / (100 + kZ95 * kZ95), 1e-15);
  const auto plain = summarize(zeros, 0, {}, false);
  EXPECT_EQ(plain.ci_high, 0.0);
}

TEST(Summarize, ShiftAndStandardError) {
  const auto e = from_standard_error(0.2, 0.01, 50, 1, {});
  EXPECT_NEAR(e.ci_high, 0.2 + kZ95 * 0.01, 1e-15);
  const auto s = shifted(e, -0.1);
  EXPECT_NEAR(s.mean, 0.1, 1e-15);
  EXPECT_NEAR(s.ci_low, 0.1 - kZ95 * 0.01, 1e-15);
}

TEST(UpperBound, ClosedFormValues) {
  EXPECT_NEAR(upper_bound_value(Fraction(1, 64), 1), 23.214973875118523354, 1e-12);
  EXPECT_NEAR(upper_bound_value(Fraction(1, 256), 1), 14.72664925007901557, 1e-12);
  EXPECT_NEAR(upper_bound_value(Fraction(1, 64), 2), 28.419769258721239533, 1e-12);
  EXPECT_NEAR(upper_bound_value(Fraction(1, 256), 2), 18.621046274969082129, 1e-12);
}

TEST(UpperBound, GridAlternatesSigns) {
  const auto g = upper_bound_grid(2);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), BiasVector({-0.5, 0.5}));
  EXPECT_EQ(g[2], BiasVector({0.0, 0.0}));
  EXPECT_EQ(g.back(), BiasVector({0.5, -0.5}));
}

TEST(UpperBound, SmallExperimentStaysBelowHalf) {
  const auto adv = make_greedy_adversary(full_alphabet(1));
  const auto r = upper_bound_experiment(Fraction(1, 16), 1, 64, *adv, 400, RandomSource(5));
  EXPECT_EQ(r.cells.size(), 5u);
  EXPECT_TRUE(r.within_bound);
  EXPECT_TRUE(r.within_half);
  for (const auto& c : r.cells) EXPECT_LE(c.result.excess.ci_high, r.max_ci_high);
}

TEST(ExactAdversarialLoss, ConstantPredictor) {
  const PlusProbabilityOracle plus = [](const Sample&, Point) { return 1.0; };
  EXPECT_NEAR(exact_adversarial_loss(plus, ProductBiasDistribution(BiasVector({0.2})), 4, Fraction(1, 4)), 0.3, 1e-15);
  EXPECT_NEAR(exact_adversarial_loss(plus, ProductBiasDistribution(BiasVector({0.2, -0.1})), 3, Fraction(1, 3)), 0.45,
              1e-15);
}

TEST(ExactAdversarialLoss, MajorityWithOneFlip) {
  // n = 3, u = 1/2: every sample is all-plus; one flip leaves 2-1 for plus.
  const PlusProbabilityOracle majority = [](const Sample& s, Point x) {
    int vote = 0;
    for (const auto& z : s)
      if (z.point == x) vote += sign(z.label);
    return vote > 0 ? 1.0 : (vote < 0 ? 0.0 : 0.5);
  };
  const ProductBiasDistribution d(BiasVector({0.5}));
  EXPECT_EQ(exact_adversarial_loss(majority, d, 3, Fraction(1, 3)), 0.0);
  // Two flips turn it.
  EXPECT_EQ(exact_adversarial_loss(majority, d, 3, Fraction(2, 3)), 1.0);
}

TEST(McAdversarialLoss, AgreesWithExactForIdentity) {
  const auto learner = make_majority_learner(3);
  const auto adv = make_identity_adversary();
  const ProductBiasDistribution d(BiasVector({0.15}));
  const auto r = mc_adversarial_loss(*learner, *adv, d, 6, Fraction(0, 1), 40'000, RandomSource(9));
  const PlusProbabilityOracle oracle = [&](const Sample& s, Point x) { return *learner->exact_plus_probability(s, x); };
  const double exact = exact_adversarial_loss(oracle, d, 6, Fraction(0, 1));
  EXPECT_NEAR(r.loss.mean, exact, 4.0 * r.loss.std_error);
  EXPECT_DOUBLE_EQ(r.bayes, 0.35);
  EXPECT_NEAR(r.excess.mean, r.loss.mean - 0.35, 1e-15);
  EXPECT_EQ(r.loss.metadata.at("adversary"), "identity");
}

TEST(McAdversarialLoss, BruteForceMatchesExactEnumeration) {
  const auto learner = make_majority_learner(3);
  const auto adv = make_brute_force_adversary(full_alphabet(1));
  const ProductBiasDistribution d(BiasVector({0.2}));
  const auto r = mc_adversarial_loss(*learner, *adv, d, 6, Fraction(1, 6), 20'000, RandomSource(4));
  const PlusProbabilityOracle oracle = [&](const Sample& s, Point x) { return *learner->exact_plus_probability(s, x); };
  EXPECT_NEAR(r.loss.mean, exact_adversarial_loss(oracle, d, 6, Fraction(1, 6)), 4.0 * r.loss.std_error);
}

TEST(McAdversarialLoss, BudgetViolationThrows) {
  const auto learner = make_majority_learner(1);
  const ProductBiasDistribution d(BiasVector({0.2}));
  EXPECT_THROW(mc_adversarial_loss(*learner, RewriteAll(), d, 8, Fraction(1, 8), 10, RandomSource(1)),
               BudgetViolationError);
}

TEST(McAdversarialLoss, IndependentOfThreadCount) {
  const auto learner = make_learner_by_id("vc", 2, Fraction(1, 16));
  const auto adv = make_greedy_adversary(full_alphabet(2));
  const ProductBiasDistribution d(BiasVector({0.25, -0.25}));
  const auto a = mc_adversarial_loss(*learner, *adv, d, 64, Fraction(1, 16), 500, RandomSource(2), 1);
  const auto b = mc_adversarial_loss(*learner, *adv, d, 64, Fraction(1, 16), 500, RandomSource(2), 4);
  EXPECT_EQ(a.loss.mean, b.loss.mean);
  EXPECT_EQ(a.loss.std_error, b.loss.std_error);
}

TEST(HardSupport, ProductWeights) {
  const auto scheme = lift_scheme(build_scheme_1d(Fraction(2, 128)).scheme, 2);
  const auto support = hard_support(scheme);
  EXPECT_EQ(support.size(), 81u);
  double total = 0.0;
  for (const auto& [u, w] : support) total += w;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_EQ(support.front().first, BiasVector({-7.0 / 64, -7.0 / 64}));
  EXPECT_DOUBLE_EQ(support.front().second, 1.0 / 16);
}

TEST(LowerBound, ConstantLearnersExact) {
  // Excess of a constant predictor at u is |u| -+ u; averaging over the hard
  // distribution at eta = 1/64 (m = 3) gives 73/14 eta.
  for (const char* id : {"constant+", "constant-"}) {
    const auto learner = make_learner_by_id(id, 1, Fraction(1, 64));
    const auto r = lower_bound_experiment(*learner, Fraction(1, 64), 1, 64, 0, 10, RandomSource(1));
    EXPECT_NEAR(r.estimate.mean, 73.0 / 896, 1e-15) << id;
    EXPECT_EQ(r.half_width, 3);
    EXPECT_FALSE(r.capped);
    EXPECT_DOUBLE_EQ(r.threshold, 1.0 / 128);
    EXPECT_TRUE(r.pass);
  }
}

TEST(LowerBound, ExpMechanismAgreesWithExactValue) {
  // Reference computed by exact summation over the binomial label counts.
  const auto learner = make_learner_by_id("exp", 1, Fraction(1, 64));
  const auto r = lower_bound_experiment(*learner, Fraction(1, 64), 1, 512, 0, 20'000, RandomSource(kDefaultSeed));
  EXPECT_EQ(r.distinct_points, 8u);
  EXPECT_NEAR(r.estimate.mean, 0.058237806575793434, 4.0 * r.estimate.std_error);
  EXPECT_TRUE(r.pass);
}

TEST(LowerBound, SampledOuterLoopIsUnbiased) {
  const auto learner = make_learner_by_id("constant+", 1, Fraction(1, 64));
  const auto r = lower_bound_experiment(*learner, Fraction(1, 64), 1, 64, 20'000, 10, RandomSource(3));
  EXPECT_NEAR(r.estimate.mean, 73.0 / 896, 4.0 * r.estimate.std_error);
}

TEST(Equivalence, HoldsForExpMechanism) {
  const auto learner = make_learner_by_id("exp", 1, Fraction(1, 8));
  const PlusProbabilityOracle oracle = [&](const Sample& s, Point x) { return *learner->exact_plus_probability(s, x); };
  for (double u : {-0.25, 0.0, 0.125, 0.5}) {
    const auto r = equivalence_check(oracle, u, Fraction(1, 8), 8);
    EXPECT_TRUE(r.holds) << u;
    EXPECT_NEAR(r.tail, std::exp(-1.0 / 3.0), 1e-15);
  }
}

TEST(PublicDomination, HoldsForMajority) {
  const auto learner = make_majority_learner(3);
  const PlusProbabilityOracle oracle = [&](const Sample& s, Point x) { return *learner->exact_plus_probability(s, x); };
  const auto r = public_domination_check(oracle, ProductBiasDistribution(BiasVector({0.1, -0.2})), 4, Fraction(1, 4));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.public_loss + 1e-12, r.private_loss);
}

TEST(LearningCurve, RejectsBiasOutsideSupport) {
  const auto learner = make_learner_by_id("exp", 1, Fraction(1, 64));
  const auto scheme = lift_scheme(build_scheme_1d(Fraction(1, 64)).scheme, 1);
  const std::vector<std::size_t> sizes = {64};
  EXPECT_THROW(learning_curve_experiment(*learner, BiasVector({0.3}), scheme, sizes, 10, RandomSource(1)),
               PreconditionError);
  const auto r = learning_curve_experiment(*learner, BiasVector({0.0}), scheme, sizes, 100, RandomSource(1));
  ASSERT_EQ(r.curve.size(), 1u);
  EXPECT_DOUBLE_EQ(r.threshold, 1.0 / 288);
}

TEST(Registry, KnownIds) {
  for (const auto& id : learner_ids()) {
    if (id == "bayes" || id == "public-<id>") continue;
    EXPECT_NO_THROW(make_learner_by_id(id, 1, Fraction(1, 16))) << id;
  }
  EXPECT_EQ(make_learner_by_id("public-majority", 1, Fraction(1, 16))->id(), "public-majority");
  EXPECT_THROW(make_learner_by_id("bayes", 1, Fraction(1, 16)), PreconditionError);
  EXPECT_NO_THROW(make_learner_by_id("bayes", 1, Fraction(1, 16), BiasVector({0.1})));
  EXPECT_THROW(make_learner_by_id("nope", 1, Fraction(1, 16)), PreconditionError);
  for (const auto& id : adversary_ids()) EXPECT_EQ(make_adversary_by_id(id, 2)->id(), id);
  EXPECT_THROW(make_adversary_by_id("nope", 1), PreconditionError);
}

TEST(Sweep, ValidateRejectsBadGrids) {
  SweepGrid g;
  g.etas = {Fraction(1, 16)};
  g.dims = {1};
  g.learners = {"exp"};
  g.adversaries = {"identity"};
  EXPECT_NO_THROW(g.validate());
  auto bad = g;
  bad.etas = {Fraction(1, 1)};
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = g;
  bad.biases = {0.7};
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = g;
  bad.learners.clear();
  EXPECT_THROW(bad.validate(), PreconditionError);
}

TEST(Sweep, RowsIndependentOfThreadCountAndKeepGoingOnErrors) {
  SweepGrid g;
  g.etas = {Fraction(1, 16), Fraction(1, 4)};
  g.dims = {1, 2};
  g.learners = {"exp", "vc"};
  g.adversaries = {"identity", "greedy"};
  g.trials = 200;
  g.seed = 11;
  const auto a = run_sweep(g, 1);
  const auto b = run_sweep(g, 3);
  ASSERT_EQ(a.size(), 16u);
  ASSERT_EQ(b.size(), a.size());
  std::size_t errors = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].excess.mean, b[j].excess.mean);
    EXPECT_EQ(a[j].excess.metadata, b[j].excess.metadata);
    EXPECT_EQ(a[j].error, b[j].error);
    errors += !a[j].error.empty();
  }
  // vc needs eta < 1/(4d), so every vc cell at eta = 1/4 fails.
  EXPECT_EQ(errors, 4u);
  EXPECT_TRUE(std::any_of(a.begin(), a.end(), [](const SweepRow& r) { return r.bound_name == "upper"; }));
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(0.5), "0.5");
}
