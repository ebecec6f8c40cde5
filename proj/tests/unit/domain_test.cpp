#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

#include "poisonlab/domain.hpp"
#include "poisonlab/errors.hpp"

using namespace poisonlab;

namespace {

Sample labels_at_zero(std::initializer_list<int> ys) {
  std::vector<Example> items;
  for (int y : ys) items.push_back({Point{0}, y > 0 ? Label::Plus : Label::Minus});
  return Sample(items);
}

}  // namespace

TEST(Labels, BitConversionIsABijection) {
  EXPECT_EQ(to_bit(Label::Plus), 1);
  EXPECT_EQ(to_bit(Label::Minus), 0);
  EXPECT_EQ(label_from_bit(1), Label::Plus);
  EXPECT_EQ(label_from_bit(0), Label::Minus);
  EXPECT_THROW(label_from_bit(2), PreconditionError);
}

TEST(SampleLoss, CountsDisagreements) {
  const Hypothesis plus = Hypothesis::constant(1, Label::Plus);
  EXPECT_EQ(sample_loss(plus, labels_at_zero({1, 1, 1})), 0.0);
  EXPECT_EQ(sample_loss(plus, labels_at_zero({1, -1, 1, -1})), 0.5);
}

TEST(SampleLoss, MatchesPerIndexLoop) {
  RandomSource rng(5);
  for (int j = 0; j < 50; ++j) {
    const Hypothesis h = Hypothesis::from_mask(3, rng.uniform_index(8));
    std::vector<Example> items(7);
    for (auto& z : items) z = {Point{rng.uniform_index(3)}, rng.fair_coin() ? Label::Plus : Label::Minus};
    int wrong = 0;
    for (const auto& z : items) wrong += h(z.point) != z.label;
    EXPECT_DOUBLE_EQ(sample_loss(h, Sample(items)), wrong / 7.0);
  }
}

TEST(SampleLoss, PointOutsideDomainThrows) {
  const Hypothesis h = Hypothesis::constant(2, Label::Plus);
  EXPECT_THROW(sample_loss(h, Sample({{Point{2}, Label::Plus}})), DomainMismatchError);
}

TEST(PopulationLoss, ClosedForm) {
  EXPECT_DOUBLE_EQ(population_loss(Hypothesis::constant(3, Label::Plus),
                                   ProductBiasDistribution(BiasVector({0.5, 0.5, 0.5}))),
                   0.0);
  EXPECT_DOUBLE_EQ(population_loss(Hypothesis::constant(3, Label::Plus),
                                   ProductBiasDistribution(BiasVector({0.0, 0.0, 0.0}))),
                   0.5);
  EXPECT_NEAR(population_loss(Hypothesis::constant(2, Label::Plus), ProductBiasDistribution(BiasVector({0.3, -0.1}))),
              0.4, 1e-15);
  EXPECT_THROW(population_loss(Hypothesis::constant(2, Label::Plus), ProductBiasDistribution(BiasVector({0.3}))),
               DomainMismatchError);
}

TEST(BayesLoss, KnownValues) {
  EXPECT_DOUBLE_EQ(bayes_loss(ProductBiasDistribution(BiasVector({0.0, 0.0}))), 0.5);
  EXPECT_NEAR(bayes_loss(ProductBiasDistribution(BiasVector({0.3}))), 0.2, 1e-15);
}

TEST(BayesLoss, EqualsMinimumOverAllLabelings) {
  RandomSource rng(9);
  for (int j = 0; j < 20; ++j) {
    const BiasVector u({rng.uniform01() - 0.5, rng.uniform01() - 0.5, rng.uniform01() - 0.5});
    const ProductBiasDistribution d(u);
    double best = 1.0;
    for (const auto& h : HypothesisClass::all_labelings(3)) best = std::min(best, population_loss(h, d));
    EXPECT_NEAR(bayes_loss(d), best, 1e-15);
  }
}

TEST(ProductBiasDistribution, AtomsInCanonicalOrderSumToOne) {
  const ProductBiasDistribution d(BiasVector({0.25, -0.5}));
  const auto atoms = d.atoms();
  ASSERT_EQ(atoms.size(), 4u);
  EXPECT_EQ(atoms[0].first, (Example{Point{0}, Label::Minus}));
  EXPECT_EQ(atoms[1].first, (Example{Point{0}, Label::Plus}));
  EXPECT_DOUBLE_EQ(atoms[1].second, 0.375);
  EXPECT_DOUBLE_EQ(atoms[3].second, 0.0);
  double total = 0.0;
  for (const auto& [z, p] : atoms) total += p;
  EXPECT_DOUBLE_EQ(total, 1.0);
}

TEST(BiasVector, RejectsOutOfRangeCoordinates) {
  EXPECT_THROW(BiasVector({0.6}), PreconditionError);
  EXPECT_THROW(BiasVector(std::vector<double>{}), PreconditionError);
}

TEST(HypothesisClass, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(HypothesisClass(1, {}), PreconditionError);
  EXPECT_THROW(HypothesisClass(1, {Hypothesis::constant(1, Label::Plus), Hypothesis::constant(1, Label::Plus)}),
               PreconditionError);
  EXPECT_EQ(HypothesisClass::all_labelings(4).size(), 16u);
}

TEST(Hamming, Distances) {
  const Sample a = labels_at_zero({1, 1, 1, 1});
  EXPECT_EQ(hamming_distance(a, a), 0.0);
  EXPECT_EQ(hamming_distance(a, labels_at_zero({1, -1, 1, 1})), 0.25);
  EXPECT_EQ(hamming_distance(a, labels_at_zero({-1, -1, -1, -1})), 1.0);
  EXPECT_THROW(hamming_distance(a, labels_at_zero({1})), PreconditionError);
  EXPECT_TRUE(within_ball(a, labels_at_zero({1, -1, 1, 1}), Fraction(1, 4)));
  EXPECT_FALSE(within_ball(a, labels_at_zero({1, -1, -1, 1}), Fraction(1, 4)));
}

TEST(DistTv, MatchesAtomTotalVariation) {
  EXPECT_EQ(dist_tv(BiasVector({0.1}), BiasVector({0.1})), 0.0);
  EXPECT_DOUBLE_EQ(dist_tv(BiasVector({0.0, 0.0}), BiasVector({1.0 / 64, -1.0 / 64})), 1.0 / 64);
  RandomSource rng(3);
  for (int j = 0; j < 20; ++j) {
    const BiasVector u({rng.uniform01() - 0.5, rng.uniform01() - 0.5});
    const BiasVector v({rng.uniform01() - 0.5, rng.uniform01() - 0.5});
    const auto a = ProductBiasDistribution(u).atoms(), b = ProductBiasDistribution(v).atoms();
    double tv = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) tv += std::abs(a[k].second - b[k].second) / 2.0;
    EXPECT_NEAR(dist_tv(u, v), tv, 1e-15);
    EXPECT_DOUBLE_EQ(dist_tv(u, v), dist_tv(v, u));
  }
  EXPECT_THROW(dist_tv(BiasVector({0.0}), BiasVector({0.0, 0.0})), DomainMismatchError);
}

TEST(BallEnumerate, ZeroBudgetGivesOnlyTheSample) {
  const Sample s = labels_at_zero({1, -1, 1});
  const auto ball = ball_enumerate(s, Fraction(1, 4), full_alphabet(1));
  ASSERT_EQ(ball.size(), 1u);
  EXPECT_EQ(ball[0], s);
}

TEST(BallEnumerate, CountsMatchFormula) {
  // n = 2, two-letter alphabet, one rewrite: S plus one flip per position.
  EXPECT_EQ(ball_enumerate(labels_at_zero({1, 1}), Fraction(1, 2), full_alphabet(1)).size(), 3u);
  // n = 3, four-letter alphabet, one rewrite: 1 + 3 * 3.
  const Sample s({{Point{0}, Label::Plus}, {Point{1}, Label::Minus}, {Point{0}, Label::Minus}});
  EXPECT_EQ(ball_enumerate(s, Fraction(1, 3), full_alphabet(2)).size(), 10u);
}

TEST(BallEnumerate, MatchesRecursiveGenerator) {
  RandomSource rng(12);
  for (int j = 0; j < 20; ++j) {
    const std::size_t n = 1 + rng.uniform_index(4);
    std::vector<Example> items(n);
    for (auto& z : items) z = {Point{rng.uniform_index(2)}, rng.fair_coin() ? Label::Plus : Label::Minus};
    const Sample s(items);
    const Fraction eta(static_cast<std::int64_t>(rng.uniform_index(5)), 4);
    const auto alphabet = full_alphabet(2);
    std::set<std::vector<Example>> expected;
    std::vector<Example> cur(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        if (within_ball(s, Sample(cur), eta)) expected.insert(cur);
        return;
      }
      for (const auto& z : alphabet) {
        cur[i] = z;
        rec(i + 1);
      }
    };
    rec(0);
    const auto ball = ball_enumerate(s, eta, alphabet);
    std::set<std::vector<Example>> got;
    for (const auto& m : ball) got.insert(std::vector<Example>(m.begin(), m.end()));
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got.size(), ball.size());
    EXPECT_EQ(ball.front(), s);
  }
}

TEST(BallEnumerate, CapExceededThrows) {
  std::vector<Example> items(20, Example{Point{0}, Label::Plus});
  EXPECT_THROW(ball_enumerate(Sample(items), Fraction(1, 2), full_alphabet(4), 1000), EnumerationTooLargeError);
}

TEST(DrawSample, DegenerateBiases) {
  RandomSource rng(4);
  for (const auto& z : draw_sample(ProductBiasDistribution(BiasVector({0.5, 0.5})), 200, rng))
    EXPECT_EQ(z.label, Label::Plus);
  for (const auto& z : draw_sample(ProductBiasDistribution(BiasVector({-0.5, -0.5})), 200, rng))
    EXPECT_EQ(z.label, Label::Minus);
}

TEST(DrawSample, LabelFrequencyConcentrates) {
  RandomSource rng(8);
  const Sample s = draw_sample(ProductBiasDistribution(BiasVector({0.25})), 100'000, rng);
  std::size_t plus = 0;
  for (const auto& z : s) plus += z.label == Label::Plus;
  // sd = sqrt(0.75 * 0.25 / 1e5) ~ 0.00137; 0.01 is about 7 sd.
  EXPECT_NEAR(plus / 1e5, 0.75, 0.01);
}

TEST(DrawSample, ReproducibleForFixedStream) {
  const ProductBiasDistribution d(BiasVector({0.1, -0.2}));
  RandomSource a(77, 1), b(77, 1);
  EXPECT_EQ(draw_sample(d, 500, a), draw_sample(d, 500, b));
}
