#include "poisonlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <bit>
#include <numbers>
#include <set>
#include <sstream>

#include "poisonlab/errors.hpp"
#include "poisonlab/parallel.hpp"

namespace poisonlab {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ExcessEstimate summarize(std::span<const double> values, std::uint64_t seed, Metadata metadata, bool unit_interval) {
  if (values.empty()) throw PreconditionError("summary of zero trials");
  const auto n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) sq[j] = (values[j] - mean) * (values[j] - mean);
  const double var = values.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;

  ExcessEstimate e;
  e.mean = mean;
  e.std_error = std::sqrt(var / n);
  e.trials = values.size();
  e.seed = seed;
  e.metadata = std::move(metadata);
  if (unit_interval && var == 0.0 && (mean == 0.0 || mean == 1.0)) {
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (mean + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(mean * (1.0 - mean) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_low = std::min(mean, center - half);
    e.ci_high = std::max(mean, center + half);
  } else {
    e.ci_low = mean - kZ95 * e.std_error;
    e.ci_high = mean + kZ95 * e.std_error;
  }
  return e;
}

ExcessEstimate from_standard_error(double mean, double std_error, std::size_t trials, std::uint64_t seed,
                                   Metadata metadata) {
  ExcessEstimate e;
  e.mean = mean;
  e.std_error = std_error;
  e.ci_low = mean - kZ95 * std_error;
  e.ci_high = mean + kZ95 * std_error;
  e.trials = trials;
  e.seed = seed;
  e.metadata = std::move(metadata);
  return e;
}

ExcessEstimate shifted(const ExcessEstimate& e, double delta) {
  ExcessEstimate out = e;
  out.mean += delta;
  out.ci_low += delta;
  out.ci_high += delta;
  return out;
}

AdversarialLossReport mc_adversarial_loss(const Learner& learner, const Adversary& adversary,
                                          const ProductBiasDistribution& dist, std::size_t n, const Fraction& eta,
                                          std::size_t trials, const RandomSource& rng, std::size_t threads) {
  if (trials == 0) throw PreconditionError("mc_adversarial_loss needs at least one trial");
  if (n == 0) throw PreconditionError("sample size must be >= 1");
  const AttackBudget budget = AttackBudget::make(eta, n);
  std::vector<double> errors(trials);
  parallel_for(trials, threads, [&](std::size_t j) {
    const RandomSource trial = rng.substream(j);
    RandomSource data_stream = trial.substream(0);
    const Sample s = draw_sample(dist, n, data_stream);
    const Example target = draw_example(dist, data_stream);
    const Sample attacked = adversary.attack(s, target, budget, learner);
    if (!budget.admits(s, attacked))
      throw BudgetViolationError(adversary.id() + " rewrote " + std::to_string(hamming_count(s, attacked)) +
                                 " examples with a budget of " + std::to_string(budget.max_corruptions));
    RandomSource learner_stream = trial.substream(1);
    errors[j] = error_probability(learner.plus_probability(attacked, target.point, learner_stream), target.label);
  });

  Metadata md{{"d", std::to_string(dist.dim())},
              {"eta", eta.to_string()},
              {"n", std::to_string(n)},
              {"learner", learner.id()},
              {"adversary", adversary.id()}};
  AdversarialLossReport report;
  report.loss = summarize(errors, rng.seed(), md, true);
  report.bayes = bayes_loss(dist);
  report.excess = shifted(report.loss, -report.bayes);
  return report;
}

namespace {

// Exhaustive view of every sample of length n over the 2d atoms of D. Sample
// codes are base-2d numbers, digit j = alphabet index of position j.
class SampleSpace {
 public:
  SampleSpace(const PlusProbabilityOracle& oracle, const ProductBiasDistribution& dist, std::size_t n)
      : oracle_(oracle), dist_(dist), n_(n), alphabet_(full_alphabet(dist.dim())) {
    if (n_ == 0) throw PreconditionError("sample size must be >= 1");
    double total = 1.0;
    for (std::size_t j = 0; j < n_; ++j) total *= static_cast<double>(alphabet_.size());
    if (total > static_cast<double>(std::size_t{1} << 22))
      throw EnumerationTooLargeError("exhaustive sample space larger than 2^22");
    count_ = static_cast<std::size_t>(total);
    cache_.assign(count_ * dist_.dim(), std::numeric_limits<double>::quiet_NaN());
  }

  std::size_t count() const { return count_; }
  std::size_t dim() const { return dist_.dim(); }
  std::span<const Example> alphabet() const { return alphabet_; }

  Sample decode(std::size_t code) const {
    std::vector<Example> items(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      items[j] = alphabet_[code % alphabet_.size()];
      code /= alphabet_.size();
    }
    return Sample(std::move(items));
  }

  std::size_t encode(const Sample& s) const {
    std::size_t code = 0;
    for (std::size_t j = n_; j-- > 0;) code = code * alphabet_.size() + index_of(s[j]);
    return code;
  }

  double weight(std::size_t code, const ProductBiasDistribution& d) const {
    double w = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      w *= d.probability(alphabet_[code % alphabet_.size()]);
      code /= alphabet_.size();
    }
    return w;
  }

  double p_plus(std::size_t code, const Sample& s, std::size_t x) {
    double& slot = cache_[code * dist_.dim() + x];
    if (std::isnan(slot)) slot = oracle_(s, Point{x});
    return slot;
  }

  // fn(code, weight, x, plus-probabilities over the ball at x); zero-weight
  // samples are skipped.
  template <class Fn>
  void for_each_ball(std::size_t max_corruptions, std::uint64_t cap, Fn&& fn) {
    std::vector<std::vector<double>> ps(dim());
    for (std::size_t code = 0; code < count_; ++code) {
      const double w = weight(code, dist_);
      if (w == 0.0) continue;
      for (auto& v : ps) v.clear();
      for_each_in_ball(
          decode(code), max_corruptions, alphabet_,
          [&](const Sample& member) {
            const std::size_t c = encode(member);
            for (std::size_t x = 0; x < dim(); ++x) ps[x].push_back(p_plus(c, member, x));
            return true;
          },
          cap);
      for (std::size_t x = 0; x < dim(); ++x) fn(code, w, x, std::span<const double>(ps[x]));
    }
  }

 private:
  std::size_t index_of(const Example& z) const { return 2 * z.point.index + static_cast<std::size_t>(to_bit(z.label)); }

  const PlusProbabilityOracle& oracle_;
  const ProductBiasDistribution& dist_;
  std::size_t n_;
  std::vector<Example> alphabet_;
  std::size_t count_ = 0;
  std::vector<double> cache_;
};

std::string units_key(const PoisoningScheme1D& inner, const BiasVector& v) {
  std::string key;
  for (double c : v.coords()) {
    const auto units = inner.units_of(c);
    key += units ? std::to_string(*units) : format_real(c);
    key += ',';
  }
  return key;
}

// F tables at every distinct evaluation point of the terms, each estimated
// from a stream derived from the point's lattice coordinates.
std::map<BiasVector, FTable> estimate_tables(const Learner& learner, const ExcessTerms& terms,
                                             const PoisoningScheme1D& inner, std::size_t n, std::size_t trials,
                                             const RandomSource& rng, std::size_t threads) {
  std::map<BiasVector, FTable> tables;
  for (const FEvaluation& e : terms.evaluations) {
    if (tables.contains(e.at)) continue;
    const RandomSource point_rng = rng.substream(stable_hash("F|" + units_key(inner, e.at) + "|n=" + std::to_string(n)));
    tables.emplace(e.at, estimate_F(learner, e.at, n, trials, point_rng, threads));
  }
  return tables;
}

FOracle table_oracle(const std::map<BiasVector, FTable>& tables) {
  return [&tables](const BiasVector& at, std::size_t i) {
    const auto it = tables.find(at);
    if (it == tables.end()) throw PreconditionError("no F table at a point the scheme maps to");
    return FValue{it->second.values.at(i), it->second.std_errors.at(i)};
  };
}

}  // namespace

double exact_adversarial_loss(const PlusProbabilityOracle& oracle, const ProductBiasDistribution& dist, std::size_t n,
                              const Fraction& eta, std::uint64_t cap) {
  SampleSpace space(oracle, dist, n);
  const AttackBudget budget = AttackBudget::make(eta, n);
  double loss = 0.0;
  space.for_each_ball(budget.max_corruptions, cap, [&](std::size_t, double w, std::size_t x, std::span<const double> ps) {
    const auto [lo, hi] = std::minmax_element(ps.begin(), ps.end());
    const double plus = dist.probability({Point{x}, Label::Plus});
    const double minus = dist.probability({Point{x}, Label::Minus});
    loss += w * (plus * (1.0 - *lo) + minus * *hi);
  });
  return loss;
}

std::vector<std::pair<BiasVector, double>> hard_support(const PoisoningSchemeD& scheme) {
  const HardBiasDistribution hard(scheme.inner());
  const auto atoms = hard.atoms();
  const std::size_t d = scheme.dim();
  std::vector<std::pair<BiasVector, double>> out;
  std::vector<std::size_t> digits(d, 0);
  while (true) {
    std::vector<double> coords(d);
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      coords[i] = atoms[digits[i]].value;
      w *= atoms[digits[i]].weight;
    }
    out.emplace_back(BiasVector(std::move(coords)), w);
    std::size_t i = d;
    while (i > 0 && ++digits[i - 1] == atoms.size()) digits[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

LowerBoundReport lower_bound_experiment(const Learner& learner, const Fraction& eta, std::size_t d, std::size_t n,
                                        std::size_t trials_outer, std::size_t trials_F, const RandomSource& rng,
                                        std::size_t threads) {
  if (d == 0) throw PreconditionError("dimension must be >= 1");
  if (!(eta > Fraction(0, 1)) || !(eta * static_cast<std::int64_t>(d) < Fraction(1, 1)))
    throw PreconditionError("lower bound needs 0 < eta < 1/d");
  const Fraction inner_eta = eta * static_cast<std::int64_t>(d);
  const auto built = build_scheme_1d(inner_eta);
  const PoisoningSchemeD scheme = lift_scheme(built.scheme, d);

  ExcessTerms total;
  std::vector<ExcessTerms> draws;
  if (trials_outer == 0) {
    for (const auto& [u, w] : hard_support(scheme)) total.add(oblivious_excess_terms(u, scheme), w);
  } else {
    const RandomSource outer = rng.substream(1);
    for (std::size_t k = 0; k < trials_outer; ++k) {
      RandomSource draw = outer.substream(k);
      std::vector<double> coords(d);
      for (double& c : coords) c = built.hard.sample(draw);
      draws.push_back(oblivious_excess_terms(BiasVector(std::move(coords)), scheme));
      total.add(draws.back(), 1.0 / static_cast<double>(trials_outer));
    }
  }

  const auto tables = estimate_tables(learner, total, built.scheme, n, trials_F, rng.substream(2), threads);
  const FOracle f = table_oracle(tables);
  const ExcessValue averaged = evaluate_terms(total, f);

  Metadata md{{"d", std::to_string(d)},
              {"eta", eta.to_string()},
              {"n", std::to_string(n)},
              {"learner", learner.id()},
              {"adversary", "oblivious-scheme"},
              {"outer", trials_outer == 0 ? "exact" : std::to_string(trials_outer)},
              {"trials_F", std::to_string(trials_F)}};

  LowerBoundReport report;
  if (trials_outer == 0) {
    report.estimate = from_standard_error(averaged.value, averaged.std_error, trials_F, rng.seed(), md);
  } else {
    std::vector<double> values;
    for (const ExcessTerms& t : draws) values.push_back(evaluate_terms(t, f).value);
    const ExcessEstimate outer = summarize(values, rng.seed(), {});
    const double se = std::sqrt(outer.std_error * outer.std_error + averaged.std_error * averaged.std_error);
    report.estimate = from_standard_error(averaged.value, se, trials_outer, rng.seed(), md);
  }
  report.threshold = std::sqrt(static_cast<double>(d) * eta.value()) / 16.0;
  report.pass = report.estimate.mean >= report.threshold - report.estimate.half_width();
  report.inner_eta = built.scheme.eta();
  report.capped = built.scheme.capped();
  report.half_width = built.scheme.half_width();
  report.distinct_points = tables.size();
  return report;
}

double upper_bound_value(const Fraction& eta, std::size_t d) {
  const double a = eta.value() * static_cast<double>(d);
  return 36.0 * std::sqrt(a) * std::log(std::numbers::e / a);
}

std::vector<BiasVector> upper_bound_grid(std::size_t d) {
  std::vector<BiasVector> grid;
  for (double v : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    std::vector<double> coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = (i % 2 == 0) ? v : -v;
    grid.emplace_back(std::move(coords));
  }
  return grid;
}

UpperBoundReport upper_bound_experiment(const Fraction& eta, std::size_t d, std::size_t n, const Adversary& adversary,
                                        std::size_t trials, const RandomSource& rng, std::size_t threads,
                                        std::span<const BiasVector> grid) {
  const VcLearnerConfig cfg{eta.value(), d};
  cfg.validate();
  cfg.check_sample_size(n);
  const auto learner = make_vc_learner(HypothesisClass::all_labelings(d), cfg);
  const std::vector<BiasVector> defaults = grid.empty() ? upper_bound_grid(d) : std::vector<BiasVector>{};
  const std::span<const BiasVector> us = grid.empty() ? std::span<const BiasVector>(defaults) : grid;

  UpperBoundReport report;
  report.bound = upper_bound_value(eta, d);
  report.within_bound = true;
  report.within_half = true;
  report.max_excess = -std::numeric_limits<double>::infinity();
  report.max_ci_high = -std::numeric_limits<double>::infinity();
  for (const BiasVector& u : us) {
    std::string key = "upper|eta=" + eta.to_string() + "|d=" + std::to_string(d) + "|n=" + std::to_string(n) + "|u=";
    for (double c : u.coords()) key += format_real(c) + ",";
    auto result = mc_adversarial_loss(*learner, adversary, ProductBiasDistribution(u), n, eta, trials,
                                      rng.substream(stable_hash(key)), threads);
    report.max_excess = std::max(report.max_excess, result.excess.mean);
    report.max_ci_high = std::max(report.max_ci_high, result.excess.ci_high);
    report.within_bound = report.within_bound && result.excess.ci_high <= report.bound;
    report.within_half = report.within_half && result.excess.ci_high <= 0.5;
    report.cells.push_back({u, std::move(result)});
  }
  return report;
}

EquivalenceReport equivalence_check(const PlusProbabilityOracle& oracle, double u, const Fraction& eta, std::size_t n,
                                    double tolerance) {
  if (n > 20) throw EnumerationTooLargeError("equivalence check needs n <= 20");
  const ProductBiasDistribution dist(BiasVector({u}));
  EquivalenceReport report;
  report.left = exact_adversarial_loss(oracle, dist, n, eta * 2);
  report.tail = std::exp(-static_cast<double>(n) * eta.value() / 3.0);

  // p_plus at x_0 for every label sequence, bit j = label of position j.
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> p(count);
  std::vector<Example> items(n);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t j = 0; j < n; ++j) items[j] = Example{Point{0}, ((mask >> j) & 1u) ? Label::Plus : Label::Minus};
    p[mask] = oracle(Sample(items), Point{0});
  }
  auto clean_error = [&](double bias, Label y) {
    double total = 0.0;
    for (std::size_t mask = 0; mask < count; ++mask) {
      const auto ones = static_cast<double>(std::popcount(mask));
      const double w = std::pow(0.5 + bias, ones) * std::pow(0.5 - bias, static_cast<double>(n) - ones);
      total += w * error_probability(p[mask], y);
    }
    return total;
  };

  const auto scheme = build_scheme_1d(eta).scheme;
  const double step = eta.value();
  report.right = 0.0;
  for (Label y : {Label::Minus, Label::Plus}) {
    const double candidates[] = {u, scheme.apply(y, u), std::clamp(u - step, -0.5, 0.5),
                                 std::clamp(u + step, -0.5, 0.5)};
    double best = 0.0;
    for (double c : candidates) best = std::max(best, clean_error(c, y));
    report.right += (0.5 + sign(y) * u) * best;
  }
  report.slack = report.left + report.tail - report.right;
  report.holds = report.slack >= -tolerance;
  return report;
}

PublicDominationReport public_domination_check(const PlusProbabilityOracle& oracle, const ProductBiasDistribution& dist,
                                               std::size_t n, const Fraction& eta, double tolerance,
                                               std::uint64_t cap) {
  SampleSpace space(oracle, dist, n);
  const AttackBudget budget = AttackBudget::make(eta, n);
  PublicDominationReport report;
  std::vector<double> breaks;
  space.for_each_ball(budget.max_corruptions, cap, [&](std::size_t, double w, std::size_t x, std::span<const double> ps) {
    const double plus = dist.probability({Point{x}, Label::Plus});
    const double minus = dist.probability({Point{x}, Label::Minus});

    const auto [lo, hi] = std::minmax_element(ps.begin(), ps.end());
    report.private_loss += w * (plus * (1.0 - *lo) + minus * *hi);

    // With r known the adversary wins on every r for which some member of the
    // ball predicts wrongly; the answer is constant between breakpoints.
    breaks.assign(ps.begin(), ps.end());
    breaks.push_back(0.0);
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double wins_plus = 0.0, wins_minus = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      const double r = 0.5 * (breaks[j] + breaks[j + 1]);
      const double len = breaks[j + 1] - breaks[j];
      bool says_minus = false, says_plus = false;
      for (double q : ps) {
        if (coupled_predict(q, r) == Label::Minus) says_minus = true;
        if (coupled_predict(q, r) == Label::Plus) says_plus = true;
      }
      if (says_minus) wins_plus += len;
      if (says_plus) wins_minus += len;
    }
    report.public_loss += w * (plus * wins_plus + minus * wins_minus);
  });
  report.slack = report.private_loss - report.public_loss;
  report.holds = report.slack >= -tolerance;
  return report;
}

LearningCurveReport learning_curve_experiment(const Learner& learner, const BiasVector& u,
                                              const PoisoningSchemeD& scheme, std::span<const std::size_t> sizes,
                                              std::size_t trials, const RandomSource& rng, std::size_t threads) {
  if (sizes.empty()) throw PreconditionError("learning curve needs at least one sample size");
  if (u.dim() != scheme.dim()) throw DomainMismatchError("bias vector dimension differs from scheme dimension");
  const HardBiasDistribution hard(scheme.inner());
  for (double c : u.coords()) {
    const auto units = scheme.inner().units_of(c);
    const bool in_support = units && std::any_of(hard.atoms().begin(), hard.atoms().end(),
                                                 [&](const auto& a) { return a.units == *units; });
    if (!in_support) throw PreconditionError("learning curve bias is outside the hard support");
  }

  LearningCurveReport report{u, {}, 0.0, 0.0};
  const double eta = scheme.budget().value();
  report.threshold = std::sqrt(static_cast<double>(scheme.dim()) * eta) / 36.0;
  const ExcessTerms terms = oblivious_excess_terms(u, scheme);
  std::size_t above = 0;
  for (std::size_t n : sizes) {
    const auto tables = estimate_tables(learner, terms, scheme.inner(), n, trials, rng, threads);
    const ExcessValue v = evaluate_terms(terms, table_oracle(tables));
    Metadata md{{"d", std::to_string(scheme.dim())},
                {"eta", scheme.budget().to_string()},
                {"n", std::to_string(n)},
                {"learner", learner.id()},
                {"adversary", "oblivious-scheme"}};
    report.curve.push_back({n, from_standard_error(v.value, v.std_error, trials, rng.seed(), md)});
    if (v.value >= report.threshold) ++above;
  }
  report.fraction_above = static_cast<double>(above) / static_cast<double>(sizes.size());
  return report;
}

std::shared_ptr<const Learner> make_learner_by_id(const std::string& id, std::size_t d, const Fraction& eta,
                                                  const std::optional<BiasVector>& u) {
  if (id.starts_with("public-"))
    return make_public_learner(make_learner_by_id(id.substr(7), d, eta, u));
  if (id == "exp") return make_exp_mechanism_learner(HypothesisClass::all_labelings(d), {eta.value(), std::nullopt});
  if (id == "coupled") return make_coupled_learner(HypothesisClass::all_labelings(d), {eta.value(), std::nullopt});
  if (id == "vc") return make_vc_learner(HypothesisClass::all_labelings(d), {eta.value(), d});
  if (id == "majority") return make_majority_learner(static_cast<std::size_t>(Fraction(eta.den(), eta.num()).ceil_times(1)));
  if (id == "constant+") return make_constant_learner(1.0);
  if (id == "constant-") return make_constant_learner(0.0);
  if (id == "bayes") {
    if (!u) throw PreconditionError("the bayes learner needs the bias vector");
    return make_bayes_learner(*u);
  }
  throw PreconditionError("unknown learner id '" + id + "'");
}

std::unique_ptr<Adversary> make_adversary_by_id(const std::string& id, std::size_t d) {
  if (id == "identity") return make_identity_adversary();
  if (id == "greedy") return make_greedy_adversary(full_alphabet(d));
  if (id == "brute-force") return make_brute_force_adversary(full_alphabet(d));
  throw PreconditionError("unknown adversary id '" + id + "'");
}

std::vector<std::string> learner_ids() {
  return {"exp", "coupled", "vc", "majority", "constant+", "constant-", "bayes", "public-<id>"};
}

std::vector<std::string> adversary_ids() { return {"identity", "greedy", "brute-force"}; }

void SweepGrid::validate() const {
  if (etas.empty() || dims.empty() || learners.empty() || adversaries.empty() || biases.empty())
    throw PreconditionError("sweep grid lists must be nonempty");
  for (const Fraction& e : etas)
    if (!(e > Fraction(0, 1) && e < Fraction(1, 1))) throw PreconditionError("sweep eta outside (0, 1): " + e.to_string());
  for (std::size_t d : dims)
    if (d == 0) throw PreconditionError("sweep dimension must be >= 1");
  for (std::size_t n : sizes)
    if (n == 0) throw PreconditionError("sweep sample size must be >= 1");
  for (double v : biases)
    if (!(v >= -0.5 && v <= 0.5)) throw PreconditionError("sweep bias outside [-1/2, 1/2]");
  if (sizes.empty() && !(size_factor > 0.0)) throw PreconditionError("size factor must be positive");
  if (trials == 0) throw PreconditionError("sweep trials must be >= 1");
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, std::size_t threads) {
  grid.validate();
  std::vector<SweepRow> rows;
  for (const Fraction& eta : grid.etas) {
    std::vector<std::size_t> sizes = grid.sizes;
    if (sizes.empty())
      sizes.push_back(static_cast<std::size_t>(std::ceil(grid.size_factor * static_cast<double>(eta.den()) /
                                                         static_cast<double>(eta.num()) - 1e-9)));
    for (std::size_t d : grid.dims) {
      for (std::size_t n : sizes) {
        for (double v : grid.biases) {
          for (const std::string& lid : grid.learners) {
            for (const std::string& aid : grid.adversaries) {
              SweepRow row;
              Metadata md{{"d", std::to_string(d)}, {"eta", eta.to_string()}, {"n", std::to_string(n)},
                          {"learner", lid},         {"adversary", aid},       {"bias", format_real(v)}};
              std::string description;
              for (const auto& [k, value] : md) description += k + "=" + value + ";";
              const RandomSource cell_rng(grid.seed, stable_hash(description));
              try {
                std::vector<double> coords(d);
                for (std::size_t i = 0; i < d; ++i) coords[i] = (i % 2 == 0) ? v : -v;
                const BiasVector u(std::move(coords));
                const auto learner = make_learner_by_id(lid, d, eta, u);
                const auto adversary = make_adversary_by_id(aid, d);
                const auto result = mc_adversarial_loss(*learner, *adversary, ProductBiasDistribution(u), n, eta,
                                                        grid.trials, cell_rng, threads);
                row.excess = result.excess;
                row.loss = result.loss.mean;
                row.bayes = result.bayes;
                if (lid == "vc" && eta * static_cast<std::int64_t>(4 * d) < Fraction(1, 1)) {
                  row.bound = upper_bound_value(eta, d);
                  row.bound_name = "upper";
                  row.pass = row.excess.ci_high <= *row.bound;
                }
              } catch (const std::exception& e) {
                row.error = e.what();
                row.pass = false;
                row.excess.trials = 0;
                row.excess.seed = grid.seed;
              }
              row.excess.metadata = md;
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace poisonlab
