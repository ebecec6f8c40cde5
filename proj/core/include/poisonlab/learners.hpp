#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poisonlab/domain.hpp"
#include "poisonlab/random.hpp"

namespace poisonlab {

/// Exponential mechanism over a finite class: Pr(h) proportional to
/// exp(-t * L_S(h)), with t = sqrt(log m / eta) unless overridden.
struct ExpMechanismConfig {
  double eta = 0.0;
  std::optional<double> temperature_override;

  void validate() const;
  /// t for a class of m hypotheses. m == 1 gives t = 0 (the single
  /// hypothesis is output with probability one).
  double temperature(std::size_t m) const;
};

struct PredictionDistribution {
  double p_plus = 0.0;
};

std::vector<double> exp_mechanism_dist(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg);
/// Natural-log probabilities; stays finite where exp_mechanism_dist underflows.
std::vector<double> exp_mechanism_log_dist(const HypothesisClass& hs, const Sample& s,
                                           const ExpMechanismConfig& cfg);
std::size_t exp_mechanism_sample_index(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg,
                                       RandomSource& rng);
const Hypothesis& exp_mechanism_sample(const HypothesisClass& hs, const Sample& s, const ExpMechanismConfig& cfg,
                                       RandomSource& rng);

/// Pr_r[A_r(S)(x) = +1] for the exponential mechanism, computed exactly.
PredictionDistribution predict_prob(const HypothesisClass& hs, const Sample& s, Point x,
                                    const ExpMechanismConfig& cfg);

/// Coupled threshold learner: +1 iff r <= p_plus. For two samples with
/// plus-probabilities p and p', the outputs differ exactly when r lies
/// between them, so Pr_r[flip] = |p - p'|.
Label coupled_predict(double p_plus, double r);
Label coupled_predict(const HypothesisClass& hs, const Sample& s, Point x, const ExpMechanismConfig& cfg, double r);

/// Subsample-cover learner for a class of VC dimension d.
struct VcLearnerConfig {
  double eta = 0.0;
  std::size_t vc_dim = 1;

  void validate() const;
  /// k = floor(sqrt(d / (4 eta))).
  std::size_t subset_size() const;
  static std::size_t first_half(std::size_t n) { return n / 2; }
  static std::size_t second_half(std::size_t n) { return n - n / 2; }
  /// Throws PreconditionError unless eta < 1/(4d), n * eta >= 1 and k <= n/2.
  void check_sample_size(std::size_t n) const;
};

/// Plus-probability of the subsample-cover learner once its k-subset J of the
/// first half has been fixed: exponential mechanism over H restricted to the
/// points of S_1[J], trained on the second half.
double vc_learner_p_plus_given_subset(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                                      std::span<const std::size_t> subset);
/// Average over every k-subset; throws EnumerationTooLargeError past the cap.
double vc_learner_exact_p_plus(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                               std::uint64_t cap = 1'000'000);
/// Draws J from rng.substream(0) and the threshold r from rng.substream(1),
/// so an adversary given both streams sees all of the learner's randomness.
Label vc_learner_predict(const HypothesisClass& hs, const Sample& s, Point x, const VcLearnerConfig& cfg,
                         const RandomSource& rng);

/// Majority vote over a uniform k-subset of the examples located at x. Fewer
/// than k such examples: vote over all of them. None at all, or a tied vote:
/// a fair coin from rng.
Label majority_subsample_predict(const Sample& s, std::size_t k, Point x, RandomSource& rng);
/// Exact Pr[+1] of majority_subsample_predict (hypergeometric vote count).
double majority_subsample_p_plus(const Sample& s, std::size_t k, Point x);

/// Maps (S, x) to A(S)(x) = E_r A_priv,r(S)(x).
using PlusProbabilityOracle = std::function<double(const Sample&, Point)>;
/// A black-box private learner run with its own randomness.
using PrivateLearnerFn = std::function<Label(const Sample&, Point, RandomSource&)>;

struct OracleInfo {
  PlusProbabilityOracle oracle;
  bool exact = true;
  std::size_t inner_draws = 0;
};

inline constexpr std::size_t kDefaultInnerDraws = 4096;

/// Monte Carlo estimate of E_r A_priv,r(S)(x) with common random numbers: the
/// same inner streams are used for every (S, x), so the estimate is a fixed
/// function of its arguments.
OracleInfo monte_carlo_oracle(PrivateLearnerFn learner, std::size_t inner_draws = kDefaultInnerDraws,
                              std::uint64_t seed = 0x5eed);

/// Public-randomness learner: +1 iff r <= oracle(S, x).
Label public_transform(const PlusProbabilityOracle& oracle, const Sample& s, Point x, double r);

/// Learner interface used by the experiment harness.
///
/// plus_probability returns Pr[+1] conditioned on whatever randomness the
/// learner draws from rng; analytic parts (the exponential mechanism, the
/// threshold r) are integrated out exactly. exact_plus_probability integrates
/// out everything and is available only when that is tractable.
class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string id() const = 0;
  virtual double plus_probability(const Sample& s, Point x, RandomSource& rng) const = 0;
  virtual std::optional<double> exact_plus_probability(const Sample& s, Point x) const;
};

std::unique_ptr<Learner> make_exp_mechanism_learner(HypothesisClass hs, ExpMechanismConfig cfg);
std::unique_ptr<Learner> make_coupled_learner(HypothesisClass hs, ExpMechanismConfig cfg);
std::unique_ptr<Learner> make_vc_learner(HypothesisClass hs, VcLearnerConfig cfg);
std::unique_ptr<Learner> make_majority_learner(std::size_t k);
std::unique_ptr<Learner> make_constant_learner(double p_plus);
/// Knows u: predicts sign(u_i), fair coin where u_i = 0.
std::unique_ptr<Learner> make_bayes_learner(BiasVector u);
/// Threshold transform of another learner's plus-probability.
std::unique_ptr<Learner> make_public_learner(std::shared_ptr<const Learner> priv,
                                             std::size_t inner_draws = kDefaultInnerDraws);

}  // namespace poisonlab
