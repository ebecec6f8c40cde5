#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "poisonlab/errors.hpp"

namespace poisonlab::verify {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::size_t pick(RandomSource& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform_index(hi - lo + 1));
}

// m distinct hypotheses over N points, by distinct random masks.
HypothesisClass random_class(RandomSource& rng, std::size_t domain, std::size_t m) {
  const std::uint64_t total = std::uint64_t{1} << domain;
  m = std::min<std::uint64_t>(m, total);
  std::set<std::uint64_t> masks;
  while (masks.size() < m) masks.insert(rng.uniform_index(total));
  std::vector<Hypothesis> hs;
  for (std::uint64_t mask : masks) hs.push_back(Hypothesis::from_mask(domain, mask));
  return HypothesisClass(domain, std::move(hs));
}

Sample random_sample(RandomSource& rng, std::size_t domain, std::size_t n) {
  std::vector<Example> items(n);
  for (auto& z : items) z = {Point{rng.uniform_index(domain)}, rng.fair_coin() ? Label::Plus : Label::Minus};
  return Sample(std::move(items));
}

Fraction pick_eta(RandomSource& rng) {
  static const Fraction choices[] = {Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)};
  return choices[rng.uniform_index(4)];
}

// Shared instance generator for the ratio and flip checks: n <= 6, d <= 2.
struct BallInstance {
  HypothesisClass hs;
  Sample s;
  Fraction eta;
};

BallInstance ball_instance(std::uint64_t seed, std::size_t j) {
  RandomSource rng = RandomSource(seed, stable_hash("ratio-instances")).substream(j);
  const std::size_t d = pick(rng, 1, 2);
  const std::size_t m = pick(rng, 1, std::size_t{1} << d);
  HypothesisClass hs = random_class(rng, d, m);
  Sample s = random_sample(rng, d, pick(rng, 1, 6));
  return {std::move(hs), std::move(s), pick_eta(rng)};
}

std::vector<double> grid_11() {
  std::vector<double> us;
  for (int i = -5; i <= 5; ++i) us.push_back(i / 10.0);
  return us;
}

}  // namespace

CheckResult timed(const std::string& module, const std::string& id, const std::string& title,
                  const std::function<void(CheckResult&)>& fn) {
  CheckResult r{module, id, title, false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_result(const CheckResult& r) {
  std::string line = (r.pass ? "PASS " : "FAIL ") + r.module + "/" + r.id + ": " + r.title;
  if (!r.detail.empty()) line += " (" + r.detail + ")";
  return line;
}

CheckResult loss_gap_exactness(std::uint64_t seed, std::size_t instances) {
  return timed("learners", "loss-gap", "expected empirical loss within log(m)/t of the minimum", [&](CheckResult& r) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < instances; ++j) {
      RandomSource rng = RandomSource(seed, stable_hash("loss-gap")).substream(j);
      const std::size_t domain = pick(rng, 1, 7);
      const std::size_t m = pick(rng, 1, std::min<std::size_t>(64, std::size_t{1} << domain));
      const HypothesisClass hs = random_class(rng, domain, m);
      const Sample s = random_sample(rng, domain, pick(rng, 1, 50));
      const ExpMechanismConfig cfg{static_cast<double>(pick(rng, 1, 31)) / 32.0, std::nullopt};
      const auto p = exp_mechanism_dist(hs, s, cfg);
      double expected = 0.0;
      std::size_t best = s.size();
      for (std::size_t h = 0; h < hs.size(); ++h) {
        const std::size_t c = disagreement_count(hs[h], s);
        expected += p[h] * static_cast<double>(c) / static_cast<double>(s.size());
        best = std::min(best, c);
      }
      const double t = cfg.temperature(hs.size());
      const double allowance = hs.size() == 1 ? 0.0 : std::log(static_cast<double>(hs.size())) / t;
      worst = std::min(worst, static_cast<double>(best) / static_cast<double>(s.size()) + allowance - expected);
    }
    r.pass = worst >= -1e-12;
    r.detail = std::to_string(instances) + " instances, min slack " + fmt("%.3e", worst);
  });
}

CheckResult ratio_stability_exactness(std::uint64_t seed, bool flip_sign, std::size_t instances) {
  return timed("learners", "ratio-stability", "probability ratios over every ball within exp(+-2 t eta)", [&](CheckResult& r) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    const double direction = flip_sign ? -1.0 : 1.0;
    for (std::size_t j = 0; j < instances; ++j) {
      const BallInstance in = ball_instance(seed, j);
      const ExpMechanismConfig cfg{in.eta.value(), std::nullopt};
      const double bound = direction * 2.0 * cfg.temperature(in.hs.size()) * cfg.eta;
      const auto base = exp_mechanism_log_dist(in.hs, in.s, cfg);
      const auto alphabet = full_alphabet(in.hs.domain_size());
      for (const Sample& other : ball_enumerate(in.s, in.eta, alphabet)) {
        const auto log_p = exp_mechanism_log_dist(in.hs, other, cfg);
        for (std::size_t h = 0; h < log_p.size(); ++h) worst = std::min(worst, bound - std::abs(base[h] - log_p[h]));
        ++pairs;
      }
    }
    r.pass = worst >= -1e-9;
    r.detail = std::to_string(instances) + " instances, " + std::to_string(pairs) + " neighbours, min log slack " +
               fmt("%.3e", worst);
  });
}

CheckResult coupled_stability(std::uint64_t seed, std::size_t instances) {
  return timed("learners", "flip-bound", "coupled flip probability at most 4 sqrt(eta log m)", [&](CheckResult& r) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < instances; ++j) {
      const BallInstance in = ball_instance(seed, j);
      const ExpMechanismConfig cfg{in.eta.value(), std::nullopt};
      const double bound = 4.0 * std::sqrt(cfg.eta * std::log(static_cast<double>(in.hs.size())));
      const auto alphabet = full_alphabet(in.hs.domain_size());
      for (std::size_t x = 0; x < in.hs.domain_size(); ++x) {
        const double p = predict_prob(in.hs, in.s, Point{x}, cfg).p_plus;
        for (const Sample& other : ball_enumerate(in.s, in.eta, alphabet))
          worst = std::min(worst, bound - std::abs(p - predict_prob(in.hs, other, Point{x}, cfg).p_plus));
      }
    }
    r.pass = worst >= -1e-12;
    r.detail = std::to_string(instances) + " instances, min slack " + fmt("%.3e", worst);
  });
}

CheckResult sauer_shelah(std::uint64_t seed, std::size_t classes, std::size_t subsets) {
  return timed("analysis", "sauer", "restriction sizes within sum_{i<=d} C(|X|, i)", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("sauer"));
    std::size_t checked = 0, violations = 0, tight = 0;
    std::size_t built = 0;
    while (built < classes) {
      const std::size_t domain = pick(rng, 1, 10);
      const HypothesisClass hs = random_class(rng, domain, pick(rng, 1, 24));
      const std::size_t vc = vc_dimension(hs);
      if (vc > 3) continue;
      ++built;
      for (std::size_t k = 0; k < subsets; ++k) {
        const auto idx = rng.subset(domain, pick(rng, 1, domain));
        std::vector<Point> xs;
        for (std::size_t i : idx) xs.push_back(Point{i});
        const std::size_t size = restrict_dedupe(hs, xs).size();
        const std::uint64_t bound = sauer_bound(xs.size(), vc);
        if (size > bound) ++violations;
        if (size == bound) ++tight;
        ++checked;
      }
    }
    r.pass = violations == 0;
    r.detail = std::to_string(checked) + " restrictions, " + std::to_string(violations) + " violations, " +
               std::to_string(tight) + " tight";
  });
}

namespace {

// Learners used on the exhaustive d = 1 instances.
std::vector<std::pair<std::string, PlusProbabilityOracle>> exhaustive_learners(const Fraction& eta) {
  std::shared_ptr<const Learner> exp = make_learner_by_id("exp", 1, eta);
  std::shared_ptr<const Learner> maj = make_learner_by_id("majority", 1, eta);
  auto wrap = [](std::shared_ptr<const Learner> l) {
    return PlusProbabilityOracle([l](const Sample& s, Point x) { return *l->exact_plus_probability(s, x); });
  };
  return {{"exp", wrap(exp)}, {"majority", wrap(maj)}};
}

const std::vector<std::size_t> kExhaustiveSizes{2, 4, 8};

}  // namespace

CheckResult equivalence_inequality(std::span<const std::size_t> sizes) {
  if (sizes.empty()) sizes = kExhaustiveSizes;
  return timed("experiments", "equivalence", "L_{D,2eta} + exp(-n eta/3) >= restricted oblivious loss",
               [&](CheckResult& r) {
                 double worst = std::numeric_limits<double>::infinity();
                 std::size_t cases = 0, failures = 0;
                 for (std::size_t n : sizes)
                   for (const Fraction& eta : {Fraction(1, 4), Fraction(1, 2)})
                     for (const auto& [name, oracle] : exhaustive_learners(eta))
                       for (double u : grid_11()) {
                         const auto rep = equivalence_check(oracle, u, eta, n);
                         worst = std::min(worst, rep.slack);
                         failures += !rep.holds;
                         ++cases;
                       }
                 r.pass = failures == 0;
                 r.detail = std::to_string(cases) + " cases, min slack " + fmt("%.6f", worst);
               });
}

CheckResult public_domination(std::span<const std::size_t> sizes) {
  if (sizes.empty()) sizes = kExhaustiveSizes;
  return timed("experiments", "public-domination", "public-randomness loss at most private loss", [&](CheckResult& r) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t cases = 0, failures = 0;
    for (std::size_t n : sizes)
      for (const Fraction& eta : {Fraction(1, 4), Fraction(1, 2)})
        for (const auto& [name, oracle] : exhaustive_learners(eta))
          for (double u : grid_11()) {
            const auto rep = public_domination_check(oracle, ProductBiasDistribution(BiasVector({u})), n, eta);
            worst = std::min(worst, rep.slack);
            failures += !rep.holds;
            ++cases;
          }
    r.pass = failures == 0;
    r.detail = std::to_string(cases) + " cases, min slack " + fmt("%.3e", worst);
  });
}

namespace {

CheckResult lower_bound_check(const std::string& id, std::size_t d, const Fraction& eta, std::uint64_t seed,
                              std::size_t trials_F, std::size_t threads) {
  return timed("experiments", id, "mean oblivious excess >= sqrt(d eta)/16 - CI", [&](CheckResult& r) {
    const auto learner = make_learner_by_id("exp", d, eta);
    const auto rep = lower_bound_experiment(*learner, eta, d, 512, 0, trials_F, RandomSource(seed, stable_hash(id)),
                                            threads);
    const double hw = rep.estimate.half_width();
    r.pass = rep.pass && hw <= 0.002;
    r.detail = "d=" + std::to_string(d) + " eta=" + eta.to_string() + " m=" + std::to_string(rep.half_width) +
               " mean " + fmt("%.6f", rep.estimate.mean) + " CI half-width " + fmt("%.6f", hw) + " threshold " +
               fmt("%.6f", rep.threshold) + ", " + std::to_string(rep.distinct_points) + " F points x " +
               std::to_string(trials_F) + " trials";
  });
}

}  // namespace

CheckResult lower_bound_d1(std::uint64_t seed, std::size_t trials_F, std::size_t threads) {
  return lower_bound_check("lower-bound-d1", 1, Fraction(1, 64), seed, trials_F, threads);
}

CheckResult lower_bound_d2(std::uint64_t seed, std::size_t trials_F, std::size_t threads) {
  return lower_bound_check("lower-bound-d2", 2, Fraction(1, 128), seed, trials_F, threads);
}

CheckResult upper_bound_compliance(std::uint64_t seed, std::size_t trials, std::size_t threads) {
  return timed("experiments", "upper-bound", "subsample-cover excess within 36 sqrt(eta d) log(e/(eta d))",
               [&](CheckResult& r) {
                 bool ok = true;
                 std::ostringstream detail;
                 // Miniatures with the exact brute-force adversary first.
                 const auto brute1 = make_adversary_by_id("brute-force", 1);
                 const auto mini1 = upper_bound_experiment(Fraction(1, 8), 1, 8, *brute1, 2000,
                                                           RandomSource(seed, stable_hash("upper-mini-1")), threads);
                 const auto brute2 = make_adversary_by_id("brute-force", 2);
                 const auto mini2 = upper_bound_experiment(Fraction(1, 16), 2, 16, *brute2, 500,
                                                           RandomSource(seed, stable_hash("upper-mini-2")), threads);
                 ok = ok && mini1.within_half && mini2.within_half;
                 detail << "brute-force miniatures max ci_high " << fmt("%.4f", mini1.max_ci_high) << " (d=1,n=8), "
                        << fmt("%.4f", mini2.max_ci_high) << " (d=2,n=16)";
                 for (std::size_t d : {1, 2}) {
                   for (const Fraction& eta : {Fraction(1, 64), Fraction(1, 256)}) {
                     const auto n = static_cast<std::size_t>(Fraction(eta.den(), eta.num()).ceil_times(4));
                     const auto greedy = make_adversary_by_id("greedy", d);
                     const auto rep = upper_bound_experiment(
                         eta, d, n, *greedy, trials,
                         RandomSource(seed, stable_hash("upper|" + std::to_string(d) + "|" + eta.to_string())), threads);
                     ok = ok && rep.within_bound && rep.within_half;
                     detail << "; d=" << d << " eta=" << eta.to_string() << " n=" << n << " max ci_high "
                            << fmt("%.4f", rep.max_ci_high) << " bound " << fmt("%.2f", rep.bound);
                   }
                 }
                 r.pass = ok;
                 r.detail = detail.str();
               });
}

CheckResult cover_radius_bound(std::uint64_t seed, std::size_t classes, std::size_t samples) {
  return timed("analysis", "cover-radius", "mean cover radius within (13d/n) log(2en/d) + 3 SE", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("cover"));
    const std::size_t n = 64;
    std::size_t built = 0, failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    while (built < classes) {
      const std::size_t domain = pick(rng, 2, 12);
      const HypothesisClass hs = random_class(rng, domain, pick(rng, 2, 16));
      const std::size_t vc = vc_dimension(hs);
      if (vc == 0 || vc > 2) continue;
      ++built;
      std::vector<double> radii(samples);
      for (double& radius : radii) {
        std::vector<Point> xs(n);
        for (Point& x : xs) x = Point{rng.uniform_index(domain)};
        radius = cover_radius_uniform(hs, restrict_dedupe(hs, xs).representatives());
      }
      const ExcessEstimate e = summarize(radii, seed, {});
      const double dd = static_cast<double>(vc);
      const double bound = 13.0 * dd / n * std::log(2.0 * std::numbers::e * n / dd);
      const double slack = bound + 3.0 * e.std_error - e.mean;
      worst = std::min(worst, slack);
      failures += slack < 0.0;
    }
    r.pass = failures == 0;
    r.detail = std::to_string(classes) + " classes, min slack " + fmt("%.4f", worst);
  });
}

std::vector<CheckResult> run_invariant_suite(const Options& options) {
  const std::uint64_t seed = options.seed;
  std::vector<CheckResult> out;

  out.push_back(timed("domain-core", "atoms-sum", "D_u atoms nonnegative and summing to 1", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("atoms"));
    double worst = 0.0;
    bool negative = false;
    for (int j = 0; j < 200; ++j) {
      std::vector<double> c(pick(rng, 1, 10));
      for (double& v : c) v = rng.uniform01() - 0.5;
      double total = 0.0;
      for (const auto& [z, p] : ProductBiasDistribution(BiasVector(c)).atoms()) {
        negative = negative || p < 0.0;
        total += p;
      }
      worst = std::max(worst, std::abs(total - 1.0));
    }
    r.pass = !negative && worst <= 1e-12;
    r.detail = "max |sum - 1| " + fmt("%.3e", worst);
  }));

  out.push_back(timed("domain-core", "bayes-min", "bayes loss equals the minimum over all labelings", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("bayes"));
    double worst = 0.0;
    for (int j = 0; j < 40; ++j) {
      const std::size_t d = pick(rng, 1, 10);
      std::vector<double> c(d);
      for (double& v : c) v = rng.uniform01() - 0.5;
      const ProductBiasDistribution dist{BiasVector(c)};
      double best = 1.0;
      for (const Hypothesis& h : HypothesisClass::all_labelings(d)) best = std::min(best, population_loss(h, dist));
      worst = std::max(worst, std::abs(best - bayes_loss(dist)));
    }
    r.pass = worst <= 1e-12;
    r.detail = "max gap " + fmt("%.3e", worst);
  }));

  out.push_back(timed("domain-core", "hamming-metric", "Hamming distance is a metric", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("metric"));
    bool ok = true;
    for (int j = 0; j < 500; ++j) {
      const std::size_t n = pick(rng, 1, 12);
      const Sample a = random_sample(rng, 2, n), b = random_sample(rng, 2, n), c = random_sample(rng, 2, n);
      ok = ok && hamming_distance(a, a) == 0.0 && hamming_distance(a, b) == hamming_distance(b, a) &&
           (hamming_distance(a, b) == 0.0) == (a == b) &&
           hamming_count(a, c) <= hamming_count(a, b) + hamming_count(b, c);
    }
    r.pass = ok;
  }));

  out.push_back(timed("domain-core", "ball-complete", "ball enumeration matches an independent generator",
                      [&](CheckResult& r) {
                        RandomSource rng(seed, stable_hash("ball"));
                        bool ok = true;
                        for (int j = 0; j < 60; ++j) {
                          const std::size_t d = pick(rng, 1, 2);
                          const std::size_t n = pick(rng, 1, 4);
                          const Sample s = random_sample(rng, d, n);
                          const Fraction eta(static_cast<std::int64_t>(pick(rng, 0, 4)), 4);
                          const auto alphabet = full_alphabet(d);
                          std::set<std::vector<Example>> expected;
                          // Recursive product over positions, filtered by distance.
                          std::vector<Example> cur(n);
                          std::function<void(std::size_t)> rec = [&](std::size_t i) {
                            if (i == n) {
                              if (within_ball(s, Sample(cur), eta)) expected.insert(cur);
                              return;
                            }
                            for (const Example& z : alphabet) {
                              cur[i] = z;
                              rec(i + 1);
                            }
                          };
                          rec(0);
                          std::set<std::vector<Example>> got;
                          std::size_t count = 0;
                          for (const Sample& m : ball_enumerate(s, eta, alphabet)) {
                            got.insert(std::vector<Example>(m.begin(), m.end()));
                            ++count;
                          }
                          ok = ok && got == expected && count == got.size();
                        }
                        r.pass = ok;
                      }));

  out.push_back(timed("domain-core", "draw-reproducible", "draw_sample is reproducible for a fixed stream",
                      [&](CheckResult& r) {
                        const ProductBiasDistribution dist(BiasVector({0.1, -0.3, 0.25}));
                        RandomSource a(seed, 7), b(seed, 7);
                        r.pass = draw_sample(dist, 1000, a) == draw_sample(dist, 1000, b);
                      }));

  out.push_back(loss_gap_exactness(seed));
  out.push_back(ratio_stability_exactness(seed, options.flip_ratio_sign));
  out.push_back(coupled_stability(seed));

  out.push_back(timed("learners", "subset-law", "subsample J is uniform over k-subsets", [&](CheckResult& r) {
    RandomSource rng(seed, stable_hash("subsets"));
    const std::size_t n1 = 6, k = 2, draws = 30'000;
    std::map<std::vector<std::size_t>, std::size_t> freq;
    for (std::size_t j = 0; j < draws; ++j) ++freq[rng.subset(n1, k)];
    const double p = 1.0 / 15.0;
    const double sigma = std::sqrt(draws * p * (1 - p));
    double worst = 0.0;
    for (const auto& [sub, c] : freq) worst = std::max(worst, std::abs(c - draws * p) / sigma);
    r.pass = freq.size() == 15 && worst <= 5.0;
    r.detail = std::to_string(freq.size()) + " subsets seen, max |z| " + fmt("%.2f", worst);
  }));

  out.push_back(timed("learners", "public-monotone", "public transform is monotone in the oracle value",
                      [&](CheckResult& r) {
                        RandomSource rng(seed, stable_hash("monotone"));
                        bool ok = true;
                        const HypothesisClass hs = HypothesisClass::all_labelings(2);
                        const ExpMechanismConfig cfg{0.125, std::nullopt};
                        const PlusProbabilityOracle oracle = [&](const Sample& s, Point x) {
                          return predict_prob(hs, s, x, cfg).p_plus;
                        };
                        for (int j = 0; j < 2000; ++j) {
                          const Sample a = random_sample(rng, 2, 8), b = random_sample(rng, 2, 8);
                          const Point x{rng.uniform_index(2)};
                          const double t = rng.uniform01();
                          const bool lower_a = oracle(a, x) <= oracle(b, x);
                          const Sample& lo = lower_a ? a : b;
                          const Sample& hi = lower_a ? b : a;
                          if (public_transform(oracle, lo, x, t) == Label::Plus)
                            ok = ok && public_transform(oracle, hi, x, t) == Label::Plus;
                        }
                        r.pass = ok;
                      }));

  out.push_back(timed("adversaries", "attack-in-ball", "attacks stay in the ball and brute force dominates greedy",
                      [&](CheckResult& r) {
                        RandomSource rng(seed, stable_hash("attacks"));
                        bool ok = true;
                        for (int j = 0; j < 80; ++j) {
                          const std::size_t d = pick(rng, 1, 2);
                          const Sample s = random_sample(rng, d, pick(rng, 1, 6));
                          const Fraction eta = pick_eta(rng);
                          const auto alphabet = full_alphabet(d);
                          const HypothesisClass hs = HypothesisClass::all_labelings(d);
                          const ExpMechanismConfig cfg{eta.value(), std::nullopt};
                          const PlusProbabilityOracle oracle = [&](const Sample& t, Point x) {
                            return predict_prob(hs, t, x, cfg).p_plus;
                          };
                          const Example target{Point{rng.uniform_index(d)}, rng.fair_coin() ? Label::Plus : Label::Minus};
                          const AttackBudget budget = AttackBudget::make(eta, s.size());
                          const Sample brute = brute_force_attack(oracle, s, target, budget, alphabet);
                          const Sample greedy = greedy_flip_attack(s, target, budget, alphabet);
                          ok = ok && within_ball(s, brute, eta) && within_ball(s, greedy, eta);
                          ok = ok && error_probability(oracle(brute, target.point), target.label) >=
                                         error_probability(oracle(greedy, target.point), target.label) - 1e-15;
                        }
                        r.pass = ok;
                      }));

  out.push_back(timed("adversaries", "scheme-budget", "grid scheme moves every grid point by exactly eta",
                      [&](CheckResult& r) {
                        bool ok = true;
                        for (std::int64_t den : {16, 20, 64, 100, 256, 1000, 4096}) {
                          const auto built = build_scheme_1d(Fraction(1, den));
                          const auto& sc = built.scheme;
                          std::int64_t worst = 0;
                          for (std::int64_t i = -sc.half_width(); i <= sc.half_width(); ++i)
                            for (Label y : {Label::Minus, Label::Plus})
                              worst = std::max(worst, std::abs(sc.apply_units(y, 2 * i) - 2 * i));
                          double total = 0.0;
                          bool inside = true;
                          for (const auto& a : built.hard.atoms()) {
                            total += a.weight;
                            inside = inside && std::abs(a.value) <= std::sqrt(sc.eta().value()) + 1e-15;
                          }
                          ok = ok && worst == 1 && std::abs(total - 1.0) <= 1e-12 && inside;
                        }
                        r.pass = ok;
                      }));

  out.push_back(timed("adversaries", "lift-budget", "lifted scheme changes one coordinate within budget eta",
                      [&](CheckResult& r) {
                        const Fraction eta(1, 128);
                        const auto inner = build_scheme_1d(eta * 2).scheme;
                        const PoisoningSchemeD scheme = lift_scheme(inner, 2);
                        bool ok = true;
                        for (const auto& [u, w] : hard_support(scheme))
                          for (std::size_t i = 0; i < 2; ++i)
                            for (Label y : {Label::Minus, Label::Plus}) {
                              const BiasVector v = scheme.apply(i, y, u);
                              ok = ok && dist_tv(u, v) <= eta.value() + 1e-15 && v[1 - i] == u[1 - i];
                            }
                        r.pass = ok;
                      }));

  out.push_back(timed("adversaries", "coupling", "maximal coupling marginals and disagreement rate", [&](CheckResult& r) {
    const ProductBiasDistribution a(BiasVector({0.0, 0.2})), b(BiasVector({0.1, -0.15}));
    RandomSource rng(seed, stable_hash("coupling"));
    const std::size_t draws = 100'000;
    std::map<Example, std::size_t> fa, fb;
    std::size_t differ = 0;
    for (std::size_t j = 0; j < draws; ++j) {
      const auto [z, w] = maximal_coupling_draw(a, b, rng);
      ++fa[z];
      ++fb[w];
      differ += z != w;
    }
    double worst = 0.0;
    for (const auto& [z, p] : a.atoms())
      worst = std::max(worst, std::abs(fa[z] - draws * p) / std::sqrt(draws * p * (1 - p)));
    for (const auto& [z, p] : b.atoms())
      worst = std::max(worst, std::abs(fb[z] - draws * p) / std::sqrt(draws * p * (1 - p)));
    const double tv = dist_tv(a.bias(), b.bias());
    const double zt = std::abs(differ - draws * tv) / std::sqrt(draws * tv * (1 - tv));
    r.pass = worst <= 4.0 && zt <= 4.0;
    r.detail = "max marginal |z| " + fmt("%.2f", worst) + ", disagreement |z| " + fmt("%.2f", zt);
  }));

  out.push_back(sauer_shelah(seed));

  out.push_back(timed("analysis", "cover-monotone", "cover radius nonincreasing along nested point sets",
                      [&](CheckResult& r) {
                        RandomSource rng(seed, stable_hash("nested"));
                        bool ok = true;
                        for (int j = 0; j < 30; ++j) {
                          const std::size_t domain = pick(rng, 2, 8);
                          const HypothesisClass hs = random_class(rng, domain, pick(rng, 2, 20));
                          std::vector<Point> xs;
                          double last = 2.0;
                          for (std::size_t k = 0; k < 8; ++k) {
                            xs.push_back(Point{rng.uniform_index(domain)});
                            const double radius = cover_radius_uniform(hs, restrict_dedupe(hs, xs).representatives());
                            ok = ok && radius <= last + 1e-15;
                            last = radius;
                          }
                        }
                        r.pass = ok;
                      }));

  out.push_back(timed("analysis", "vc-extremes", "full class has VC dimension N, singletons 0", [&](CheckResult& r) {
    bool ok = true;
    for (std::size_t N = 1; N <= 8; ++N) {
      ok = ok && vc_dimension(HypothesisClass::all_labelings(N)) == N;
      ok = ok && vc_dimension(HypothesisClass(N, {Hypothesis::constant(N, Label::Plus)})) == 0;
    }
    r.pass = ok;
  }));

  out.push_back(timed("analysis", "bayes-zero-excess", "Bayes F under identity maps has zero oblivious excess",
                      [&](CheckResult& r) {
                        RandomSource rng(seed, stable_hash("bayes-zero"));
                        const PoisoningSchemeD scheme = lift_scheme(build_scheme_1d(Fraction(1, 64)).scheme, 3);
                        double worst = 0.0;
                        for (int j = 0; j < 200; ++j) {
                          std::vector<double> c(3);
                          // Off the 1/64 lattice, so every map is the identity.
                          for (double& v : c) v = (std::floor((rng.uniform01() - 0.5) * 64.0) + 0.5) / 64.0;
                          const BiasVector u(c);
                          const FOracle bayes = [&](const BiasVector& at, std::size_t i) {
                            return FValue{at[i] > 0 ? 0.5 : -0.5, 0.0};
                          };
                          worst = std::max(worst, std::abs(oblivious_excess(bayes, u, scheme).value));
                        }
                        r.pass = worst <= 1e-12;
                        r.detail = "max |excess| " + fmt("%.3e", worst);
                      }));

  out.push_back(timed("analysis", "F-bounded", "estimate_F bounded, reproducible and thread-independent",
                      [&](CheckResult& r) {
                        const auto learner = make_learner_by_id("vc", 2, Fraction(1, 32));
                        const BiasVector u({0.2, -0.4});
                        const RandomSource rng(seed, stable_hash("F"));
                        const FTable a = estimate_F(*learner, u, 64, 400, rng, 1);
                        const FTable b = estimate_F(*learner, u, 64, 400, rng, 3);
                        bool ok = a.values == b.values && a.std_errors == b.std_errors;
                        for (std::size_t i = 0; i < 2; ++i) ok = ok && std::abs(a.values[i]) <= 0.5 && a.std_errors[i] >= 0.0;
                        r.pass = ok;
                      }));

  out.push_back(equivalence_inequality());
  out.push_back(public_domination());

  out.push_back(timed("experiments", "budget-monotone", "brute-force adversarial loss nondecreasing in eta",
                      [&](CheckResult& r) {
                        bool ok = true;
                        for (const auto& [name, oracle] : exhaustive_learners(Fraction(1, 4)))
                          for (double u : {-0.3, 0.0, 0.2, 0.5}) {
                            double last = -1.0;
                            for (std::int64_t k = 0; k <= 4; ++k) {
                              const double loss = exact_adversarial_loss(
                                  oracle, ProductBiasDistribution(BiasVector({u})), 4, Fraction(k, 4));
                              ok = ok && loss >= last - 1e-12;
                              last = loss;
                            }
                          }
                        r.pass = ok;
                      }));

  out.push_back(timed("experiments", "mc-vs-exact", "Monte Carlo brute-force loss within 4 sigma of enumeration",
                      [&](CheckResult& r) {
                        const Fraction eta(1, 3);
                        const auto learner = make_learner_by_id("exp", 1, eta);
                        const auto brute = make_adversary_by_id("brute-force", 1);
                        double worst = 0.0;
                        for (double u : {-0.25, 0.1, 0.4}) {
                          const ProductBiasDistribution dist(BiasVector({u}));
                          const auto mc = mc_adversarial_loss(*learner, *brute, dist, 3, eta, 20'000,
                                                              RandomSource(seed, stable_hash("mc-exact")), options.threads);
                          const double exact = exact_adversarial_loss(
                              [&](const Sample& s, Point x) { return *learner->exact_plus_probability(s, x); }, dist, 3,
                              eta);
                          worst = std::max(worst, std::abs(mc.loss.mean - exact) / mc.loss.std_error);
                        }
                        r.pass = worst <= 4.0;
                        r.detail = "max |z| " + fmt("%.2f", worst);
                      }));

  out.push_back(timed("experiments", "sweep-determinism", "sweep rows identical across thread counts",
                      [&](CheckResult& r) {
                        SweepGrid grid;
                        grid.etas = {Fraction(1, 16), Fraction(1, 32)};
                        grid.dims = {1, 2};
                        grid.learners = {"exp", "vc"};
                        grid.adversaries = {"greedy"};
                        grid.trials = 300;
                        grid.seed = seed;
                        const auto a = run_sweep(grid, 1);
                        const auto b = run_sweep(grid, 3);
                        bool ok = a.size() == b.size();
                        for (std::size_t j = 0; ok && j < a.size(); ++j)
                          ok = a[j].excess.mean == b[j].excess.mean && a[j].excess.ci_high == b[j].excess.ci_high &&
                               a[j].excess.metadata == b[j].excess.metadata && a[j].error == b[j].error;
                        r.pass = ok;
                        r.detail = std::to_string(a.size()) + " rows";
                      }));

  return out;
}

}  // namespace poisonlab::verify
