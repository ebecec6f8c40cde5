#include "poisonlab/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "poisonlab/analysis.hpp"
#include "poisonlab/errors.hpp"

namespace poisonlab {
namespace {

std::vector<std::size_t> loss_counts(const HypothesisClass& hs, const Sample& s) {
  if (s.size() == 0) throw PreconditionError("empty sample");
  std::vector<std::size_t> counts;
  counts.reserve(hs.size());
  for (const Hypothesis& h : hs) counts.push_back(disagreement_count(h, s));
  return counts;
}

// Unnormalized weights exp(-t (L_h - L_min)); the best hypothesis has weight 1.
std::vector<double> shifted_weights(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg) {
  cfg.validate();
  const auto counts = loss_counts(hs, s);
  const double t = cfg.temperature(hs.size());
  const double n = static_cast<double>(s.size());
  const std::size_t best = *std::min_element(counts.begin(), counts.end());
  std::vector<double> w(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    w[i] = std::exp(-t * static_cast<double>(counts[i] - best) / n);
  return w;
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

std::uint64_t binomial_saturating(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

void ExpMechanismConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("exponential mechanism eta must lie in (0, 1)");
  if (temperature_override && !(*temperature_override > 0.0))
    throw PreconditionError("temperature override must be positive");
}

double ExpMechanismConfig::temperature(std::size_t m) const {
  if (temperature_override) return *temperature_override;
  if (m <= 1) return 0.0;
  return std::sqrt(std::log(static_cast<double>(m)) / eta);
}

std::vector<double> exp_mechanism_dist(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg) {
  auto w = shifted_weights(hs, s, cfg);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& p : w) p /= total;
  return w;
}

std::vector<double> exp_mechanism_log_dist(const HypothesisClass& hs, const Sample& s,
                                           const ExpMechanismConfig& cfg) {
  cfg.validate();
  const auto counts = loss_counts(hs, s);
  const double t = cfg.temperature(hs.size());
  const double n = static_cast<double>(s.size());
  const std::size_t best = *std::min_element(counts.begin(), counts.end());
  std::vector<double> logw(counts.size());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    logw[i] = -t * static_cast<double>(counts[i] - best) / n;
    total += std::exp(logw[i]);
  }
  const double log_total = std::log(total);
  for (double& v : logw) v -= log_total;
  return logw;
}

std::size_t exp_mechanism_sample_index(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg,
                                       RandomSource& rng) {
  const auto w = shifted_weights(hs, s, cfg);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double target = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (target < acc) return i;
  }
  return w.size() - 1;
}

const Hypothesis& exp_mechanism_sample(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg,
                                       RandomSource& rng) {
  return hs[exp_mechanism_sample_index(hs, s, cfg, rng)];
}

PredictionDistribution predict_prob(const HypothesisClass& hs, const Sample& s, Point x,
                                    const ExpMechanismConfig& cfg) {
  if (x.index >= hs.domain_size()) throw DomainMismatchError("query point outside the class domain");
  const auto w = shifted_weights(hs, s, cfg);
  double plus = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += w[i];
    if (hs[i](x) == Label::Plus) plus += w[i];
  }
  return {std::clamp(plus / total, 0.0, 1.0)};
}

Label coupled_predict(double p_plus, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw PreconditionError("threshold r must lie in [0, 1]");
  return r <= p_plus ? Label::Plus : Label::Minus;
}

Label coupled_predict(const HypothesisClass& hs, const Sample& s, Point x, const ExpMechanismConfig& cfg, double r) {
  return coupled_predict(predict_prob(hs, s, x, cfg).p_plus, r);
}

void VcLearnerConfig::validate() const {
  if (vc_dim < 1) throw PreconditionError("subsample-cover learner needs VC dimension >= 1");
  if (!(eta > 0.0) || !(4.0 * static_cast<double>(vc_dim) * eta < 1.0))
    throw PreconditionError("subsample-cover learner needs 0 < eta < 1/(4d)");
}

std::size_t VcLearnerConfig::subset_size() const {
  validate();
  const double target = static_cast<double>(vc_dim) / (4.0 * eta);
  const double slack = target * 1e-12;
  auto k = static_cast<std::size_t>(std::floor(std::sqrt(target)));
  while (static_cast<double>((k + 1) * (k + 1)) <= target + slack) ++k;
  while (k > 0 && static_cast<double>(k * k) > target + slack) --k;
  return k;
}

void VcLearnerConfig::check_sample_size(std::size_t n) const {
  const std::size_t k = subset_size();
  if (static_cast<double>(n) * eta < 1.0 - 1e-12)
    throw PreconditionError("subsample-cover learner needs n >= 1/eta (n = " + std::to_string(n) +
                            ", eta = " + std::to_string(eta) + ")");
  if (k < 1 || k > first_half(n))
    throw PreconditionError("subset size k = " + std::to_string(k) + " does not fit in the first half of n = " +
                            std::to_string(n));
}

double vc_learner_p_plus_given_subset(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                                      std::span<const std::size_t> subset) {
  const std::size_t n1 = VcLearnerConfig::first_half(s.size());
  std::vector<Point> points;
  for (std::size_t j : subset) {
    if (j >= n1) throw PreconditionError("subset index outside the first half");
    points.push_back(s[j].point);
  }
  const RestrictionClass cover = restrict_dedupe(hs, points);
  const Sample evaluation = s.slice(n1, VcLearnerConfig::second_half(s.size()));
  return predict_prob(cover.representatives(), evaluation, x, ExpMechanismConfig{cfg.eta, std::nullopt}).p_plus;
}

double vc_learner_exact_p_plus(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                               std::uint64_t cap) {
  cfg.check_sample_size(s.size());
  const std::size_t n1 = VcLearnerConfig::first_half(s.size());
  const std::size_t k = cfg.subset_size();
  const std::uint64_t count = binomial_saturating(n1, k);
  if (count > cap)
    throw EnumerationTooLargeError("C(" + std::to_string(n1) + ", " + std::to_string(k) + ") subsets exceed cap");
  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  double total = 0.0;
  while (true) {
    total += vc_learner_p_plus_given_subset(hs, s, x, cfg, subset);
    std::size_t a = k;
    while (a > 0 && subset[a - 1] == n1 - k + (a - 1)) --a;
    if (a == 0) break;
    ++subset[a - 1];
    for (std::size_t b = a; b < k; ++b) subset[b] = subset[b - 1] + 1;
  }
  return total / static_cast<double>(count);
}

Label vc_learner_predict(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                         const RandomSource& rng) {
  cfg.check_sample_size(s.size());
  RandomSource subset_stream = rng.substream(0);
  RandomSource threshold_stream = rng.substream(1);
  const auto subset = subset_stream.subset(VcLearnerConfig::first_half(s.size()), cfg.subset_size());
  return coupled_predict(vc_learner_p_plus_given_subset(hs, s, x, cfg, subset), threshold_stream.uniform01());
}

Label majority_subsample_predict(const Sample& s, std::size_t k, Point x, RandomSource& rng) {
  if (k == 0) throw PreconditionError("majority subsample size must be >= 1");
  std::vector<Label> at_x;
  for (const Example& z : s)
    if (z.point == x) at_x.push_back(z.label);
  if (at_x.empty()) return rng.fair_coin() ? Label::Plus : Label::Minus;
  const auto picked = rng.subset(at_x.size(), std::min(k, at_x.size()));
  int votes = 0;
  for (std::size_t j : picked) votes += sign(at_x[j]);
  if (votes == 0) return rng.fair_coin() ? Label::Plus : Label::Minus;
  return votes > 0 ? Label::Plus : Label::Minus;
}

double majority_subsample_p_plus(const Sample& s, std::size_t k, Point x) {
  if (k == 0) throw PreconditionError("majority subsample size must be >= 1");
  std::size_t total = 0;
  std::size_t plus = 0;
  for (const Example& z : s)
    if (z.point == x) {
      ++total;
      if (z.label == Label::Plus) ++plus;
    }
  if (total == 0) return 0.5;
  const std::size_t draws = std::min(k, total);
  const std::size_t minus = total - plus;
  const double log_all = log_binomial(total, draws);
  double p = 0.0;
  const std::size_t lo = draws > minus ? draws - minus : 0;
  const std::size_t hi = std::min(draws, plus);
  for (std::size_t j = lo; j <= hi; ++j) {
    const double mass = std::exp(log_binomial(plus, j) + log_binomial(minus, draws - j) - log_all);
    if (2 * j > draws)
      p += mass;
    else if (2 * j == draws)
      p += 0.5 * mass;
  }
  return std::clamp(p, 0.0, 1.0);
}

OracleInfo monte_carlo_oracle(PrivateLearnerFn learner, std::size_t inner_draws, std::uint64_t seed) {
  if (inner_draws == 0) throw PreconditionError("Monte Carlo oracle needs at least one inner draw");
  OracleInfo info;
  info.exact = false;
  info.inner_draws = inner_draws;
  info.oracle = [learner = std::move(learner), inner_draws, seed](const Sample& s, Point x) {
    std::size_t plus = 0;
    for (std::size_t j = 0; j < inner_draws; ++j) {
      RandomSource inner(seed, j);
      if (learner(s, x, inner) == Label::Plus) ++plus;
    }
    return static_cast<double>(plus) / static_cast<double>(inner_draws);
  };
  return info;
}

Label public_transform(const PlusProbabilityOracle& oracle, const Sample& s, Point x, double r) {
  return coupled_predict(oracle(s, x), r);
}

std::optional<double> Learner::exact_plus_probability(const Sample&, Point) const { return std::nullopt; }

namespace {

class ExpMechanismLearner : public Learner {
 public:
  ExpMechanismLearner(HypothesisClass hs, ExpMechanismConfig cfg, std::string id)
      : hs_(std::move(hs)), cfg_(cfg), id_(std::move(id)) {
    cfg_.validate();
  }
  std::string id() const override { return id_; }
  double plus_probability(const Sample& s, Point x, RandomSource&) const override {
    return predict_prob(hs_, s, x, cfg_).p_plus;
  }
  std::optional<double> exact_plus_probability(const Sample& s, Point x) const override {
    return predict_prob(hs_, s, x, cfg_).p_plus;
  }

 private:
  HypothesisClass hs_;
  ExpMechanismConfig cfg_;
  std::string id_;
};

class VcLearner : public Learner {
 public:
  VcLearner(HypothesisClass hs, VcLearnerConfig cfg) : hs_(std::move(hs)), cfg_(cfg) { cfg_.validate(); }
  std::string id() const override { return "vc"; }
  double plus_probability(const Sample& s, Point x, RandomSource& rng) const override {
    cfg_.check_sample_size(s.size());
    const auto subset = rng.subset(VcLearnerConfig::first_half(s.size()), cfg_.subset_size());
    return vc_learner_p_plus_given_subset(hs_, s, x, cfg_, subset);
  }
  std::optional<double> exact_plus_probability(const Sample& s, Point x) const override {
    try {
      return vc_learner_exact_p_plus(hs_, s, x, cfg_);
    } catch (const EnumerationTooLargeError&) {
      return std::nullopt;
    }
  }

 private:
  HypothesisClass hs_;
  VcLearnerConfig cfg_;
};

class MajorityLearner : public Learner {
 public:
  explicit MajorityLearner(std::size_t k) : k_(k) {
    if (k_ == 0) throw PreconditionError("majority subsample size must be >= 1");
  }
  std::string id() const override { return "majority"; }
  double plus_probability(const Sample& s, Point x, RandomSource&) const override {
    return majority_subsample_p_plus(s, k_, x);
  }
  std::optional<double> exact_plus_probability(const Sample& s, Point x) const override {
    return majority_subsample_p_plus(s, k_, x);
  }

 private:
  std::size_t k_;
};

class ConstantLearner : public Learner {
 public:
  explicit ConstantLearner(double p) : p_(p) {
    if (!(p_ >= 0.0 && p_ <= 1.0)) throw PreconditionError("constant plus-probability outside [0, 1]");
  }
  std::string id() const override {
    if (p_ == 1.0) return "constant+";
    if (p_ == 0.0) return "constant-";
    return "constant(" + std::to_string(p_) + ")";
  }
  double plus_probability(const Sample&, Point, RandomSource&) const override { return p_; }
  std::optional<double> exact_plus_probability(const Sample&, Point) const override { return p_; }

 private:
  double p_;
};

class BayesLearner : public Learner {
 public:
  explicit BayesLearner(BiasVector u) : u_(std::move(u)) {}
  std::string id() const override { return "bayes"; }
  double plus_probability(const Sample& s, Point x, RandomSource&) const override {
    return *exact_plus_probability(s, x);
  }
  std::optional<double> exact_plus_probability(const Sample&, Point x) const override {
    if (x.index >= u_.dim()) throw DomainMismatchError("query point outside the bias vector");
    const double b = u_[x.index];
    return b > 0.0 ? 1.0 : (b < 0.0 ? 0.0 : 0.5);
  }

 private:
  BiasVector u_;
};

class PublicLearner : public Learner {
 public:
  PublicLearner(std::shared_ptr<const Learner> priv, std::size_t inner_draws) : priv_(std::move(priv)) {
    if (!priv_) throw PreconditionError("public transform of a null learner");
    auto source = priv_;
    mc_ = monte_carlo_oracle(
        [source](const Sample& s, Point x, RandomSource& rng) {
          return rng.uniform01() < source->plus_probability(s, x, rng) ? Label::Plus : Label::Minus;
        },
        inner_draws);
  }
  std::string id() const override { return "public-" + priv_->id(); }
  double plus_probability(const Sample& s, Point x, RandomSource&) const override { return oracle(s, x); }
  std::optional<double> exact_plus_probability(const Sample& s, Point x) const override {
    return priv_->exact_plus_probability(s, x);
  }

 private:
  // Exact path whenever the private learner can integrate out its randomness.
  double oracle(const Sample& s, Point x) const {
    if (auto exact = priv_->exact_plus_probability(s, x)) return *exact;
    return mc_.oracle(s, x);
  }

  std::shared_ptr<const Learner> priv_;
  OracleInfo mc_;
};

}  // namespace

std::unique_ptr<Learner> make_exp_mechanism_learner(HypothesisClass hs, ExpMechanismConfig cfg) {
  return std::make_unique<ExpMechanismLearner>(std::move(hs), cfg, "exp");
}

std::unique_ptr<Learner> make_coupled_learner(HypothesisClass hs, ExpMechanismConfig cfg) {
  // Same plus-probability as the exponential mechanism; only the coupling of
  // its randomness across samples differs.
  return std::make_unique<ExpMechanismLearner>(std::move(hs), cfg, "coupled");
}

std::unique_ptr<Learner> make_vc_learner(HypothesisClass hs, VcLearnerConfig cfg) {
  return std::make_unique<VcLearner>(std::move(hs), cfg);
}

std::unique_ptr<Learner> make_majority_learner(std::size_t k) { return std::make_unique<MajorityLearner>(k); }

std::unique_ptr<Learner> make_constant_learner(double p_plus) { return std::make_unique<ConstantLearner>(p_plus); }

std::unique_ptr<Learner> make_bayes_learner(BiasVector u) { return std::make_unique<BayesLearner>(std::move(u)); }

std::unique_ptr<Learner> make_public_learner(std::shared_ptr<const Learner> priv, std::size_t inner_draws) {
  return std::make_unique<PublicLearner>(std::move(priv), inner_draws);
}

}  // namespace poisonlab
