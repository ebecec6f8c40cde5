#include <benchmark/benchmark.h>

#include "poisonlab/analysis.hpp"
#include "poisonlab/experiments.hpp"

using namespace poisonlab;

namespace {

Sample random_sample(std::size_t d, std::size_t n, std::uint64_t seed) {
  RandomSource rng(seed);
  return draw_sample(ProductBiasDistribution(BiasVector(std::vector<double>(d, 0.25))), n, rng);
}

void BM_ExpMechanismPredict(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto hs = HypothesisClass::all_labelings(d);
  const Sample s = random_sample(d, 256, 1);
  const ExpMechanismConfig cfg{1.0 / 64, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(predict_prob(hs, s, Point{0}, cfg).p_plus);
  state.SetComplexityN(static_cast<std::int64_t>(hs.size()));
}
BENCHMARK(BM_ExpMechanismPredict)->DenseRange(1, 8)->Complexity();

void BM_VcLearnerPlusProbability(benchmark::State& state) {
  const std::size_t d = 2;
  const auto learner = make_learner_by_id("vc", d, Fraction(1, 64));
  const Sample s = random_sample(d, static_cast<std::size_t>(state.range(0)), 2);
  RandomSource rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(learner->plus_probability(s, Point{1}, rng));
}
BENCHMARK(BM_VcLearnerPlusProbability)->Arg(256)->Arg(1024)->Arg(4096);

void BM_MajorityExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto learner = make_majority_learner(16);
  const Sample s = random_sample(1, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(*learner->exact_plus_probability(s, Point{0}));
}
BENCHMARK(BM_MajorityExact)->Arg(64)->Arg(512)->Arg(4096);

void BM_BallEnumerate(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Sample s = random_sample(2, 16, 5);
  const auto alphabet = full_alphabet(2);
  for (auto _ : state) {
    std::size_t count = 0;
    for_each_in_ball(s, k, alphabet, [&](const Sample&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_BallEnumerate)->DenseRange(0, 3);

void BM_GreedyAttack(benchmark::State& state) {
  const Sample s = random_sample(2, static_cast<std::size_t>(state.range(0)), 6);
  const auto budget = AttackBudget::make(Fraction(1, 16), s.size());
  const auto alphabet = full_alphabet(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_flip_attack(s, {Point{0}, Label::Plus}, budget, alphabet));
}
BENCHMARK(BM_GreedyAttack)->Arg(64)->Arg(1024);

void BM_EstimateF(benchmark::State& state) {
  const auto learner = make_learner_by_id("exp", 1, Fraction(1, 64));
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_F(*learner, BiasVector({1.0 / 64}), 256, 1000, RandomSource(7)).values[0]);
}
BENCHMARK(BM_EstimateF)->Unit(benchmark::kMillisecond);

void BM_McAdversarialLoss(benchmark::State& state) {
  const auto learner = make_learner_by_id("exp", 2, Fraction(1, 64));
  const auto adv = make_greedy_adversary(full_alphabet(2));
  const ProductBiasDistribution dist(BiasVector({0.25, -0.25}));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mc_adversarial_loss(*learner, *adv, dist, 256, Fraction(1, 64), 500, RandomSource(8)).loss.mean);
}
BENCHMARK(BM_McAdversarialLoss)->Unit(benchmark::kMillisecond);

void BM_VcDimension(benchmark::State& state) {
  const auto hs = HypothesisClass::all_labelings(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vc_dimension(hs));
}
BENCHMARK(BM_VcDimension)->DenseRange(2, 6, 2);

}  // namespace
