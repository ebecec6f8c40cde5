#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poisonlab/adversaries.hpp"
#include "poisonlab/analysis.hpp"
#include "poisonlab/domain.hpp"
#include "poisonlab/fraction.hpp"
#include "poisonlab/learners.hpp"
#include "poisonlab/random.hpp"

namespace poisonlab {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::size_t kDefaultTrials = 10'000;
inline constexpr double kZ95 = 1.959963984540054;

/// Sorted key/value experiment parameters (d, eta, n, learner, adversary, ...).
using Metadata = std::map<std::string, std::string>;

struct ExcessEstimate {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Metadata metadata;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

/// 95% normal interval from per-trial values. With unit_interval set and no
/// observed spread (all trials at 0 or all at 1) the Wilson interval is used
/// instead, which does not collapse to a point.
ExcessEstimate summarize(std::span<const double> values, std::uint64_t seed, Metadata metadata,
                         bool unit_interval = false);
/// Interval mean +- z * std_error.
ExcessEstimate from_standard_error(double mean, double std_error, std::size_t trials, std::uint64_t seed,
                                   Metadata metadata);
ExcessEstimate shifted(const ExcessEstimate& e, double delta);

struct AdversarialLossReport {
  ExcessEstimate loss;
  /// loss - bayes_loss(D).
  ExcessEstimate excess;
  double bayes = 0.0;
};

/// Each trial draws S ~ D^n and (x, y) ~ D from rng.substream(j).substream(0),
/// lets the adversary rewrite S, and scores the learner's error probability at
/// (x, y) with randomness from substream(1). Throws BudgetViolationError if
/// an adversary leaves the ball.
AdversarialLossReport mc_adversarial_loss(const Learner& learner, const Adversary& adversary,
                                          const ProductBiasDistribution& dist, std::size_t n, const Fraction& eta,
                                          std::size_t trials, const RandomSource& rng, std::size_t threads = 1);

/// E_{S, (x,y)} sup_{S' in B_eta(S)} err(S', x, y) by full enumeration of
/// samples over the alphabet of D and of every ball.
double exact_adversarial_loss(const PlusProbabilityOracle& oracle, const ProductBiasDistribution& dist, std::size_t n,
                              const Fraction& eta, std::uint64_t cap = kDefaultBallCap);

/// Product of the hard distribution over the d coordinates with weights.
std::vector<std::pair<BiasVector, double>> hard_support(const PoisoningSchemeD& scheme);

struct LowerBoundReport {
  ExcessEstimate estimate;
  /// sqrt(d eta) / 16.
  double threshold = 0.0;
  bool pass = false;
  Fraction inner_eta;
  bool capped = false;
  std::int64_t half_width = 0;
  std::size_t distinct_points = 0;
};

/// Builds the scheme at d*eta, lifts it to d coordinates, and averages the
/// oblivious excess over u drawn from the hard product distribution.
/// trials_outer == 0 sums over the whole finite support with its weights
/// instead of sampling u. Every distinct F evaluation point gets trials_F
/// clean samples from its own stream.
LowerBoundReport lower_bound_experiment(const Learner& learner, const Fraction& eta, std::size_t d, std::size_t n,
                                        std::size_t trials_outer, std::size_t trials_F, const RandomSource& rng,
                                        std::size_t threads = 1);

/// 36 sqrt(eta d) log(e / (eta d)).
double upper_bound_value(const Fraction& eta, std::size_t d);
/// u_i = v (-1)^i for v in {-1/2, -1/4, 0, 1/4, 1/2}.
std::vector<BiasVector> upper_bound_grid(std::size_t d);

struct UpperBoundCell {
  BiasVector u;
  AdversarialLossReport result;
};

struct UpperBoundReport {
  std::vector<UpperBoundCell> cells;
  double bound = 0.0;
  double max_excess = 0.0;
  double max_ci_high = 0.0;
  bool within_bound = false;
  /// Every cell's ci_high <= 1/2.
  bool within_half = false;
};

/// Subsample-cover learner over all labelings of d points against the
/// adversary, one cell per bias vector.
UpperBoundReport upper_bound_experiment(const Fraction& eta, std::size_t d, std::size_t n, const Adversary& adversary,
                                        std::size_t trials, const RandomSource& rng, std::size_t threads = 1,
                                        std::span<const BiasVector> grid = {});

struct EquivalenceReport {
  /// L_{D, 2 eta}(A, n).
  double left = 0.0;
  /// e^{-n eta / 3}.
  double tail = 0.0;
  /// Oblivious loss with the sup restricted to the candidate biases.
  double right = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// d = 1 only. Candidates for the oblivious adversary: u itself, the scheme
/// images xi_y(u) of build_scheme_1d(eta), and u -+ eta clamped to [-1/2, 1/2].
EquivalenceReport equivalence_check(const PlusProbabilityOracle& oracle, double u, const Fraction& eta, std::size_t n,
                                    double tolerance = 1e-9);

struct PublicDominationReport {
  double public_loss = 0.0;
  double private_loss = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// Compares the threshold learner against an adversary that also sees r with
/// the private learner against one that does not. The public side integrates
/// r exactly over the breakpoints given by the plus-probabilities in each ball.
PublicDominationReport public_domination_check(const PlusProbabilityOracle& oracle, const ProductBiasDistribution& dist,
                                               std::size_t n, const Fraction& eta, double tolerance = 1e-9,
                                               std::uint64_t cap = kDefaultBallCap);

struct LearningCurvePoint {
  std::size_t n = 0;
  ExcessEstimate excess;
};

struct LearningCurveReport {
  BiasVector u;
  std::vector<LearningCurvePoint> curve;
  /// sqrt(d eta) / 36 with eta the lifted budget.
  double threshold = 0.0;
  double fraction_above = 0.0;
};

/// Throws PreconditionError unless u lies in the hard support of the scheme.
LearningCurveReport learning_curve_experiment(const Learner& learner, const BiasVector& u,
                                              const PoisoningSchemeD& scheme, std::span<const std::size_t> sizes,
                                              std::size_t trials, const RandomSource& rng, std::size_t threads = 1);

/// Learner ids: exp, coupled, vc, majority, constant+, constant-, bayes,
/// public-<id>. bayes needs u.
std::shared_ptr<const Learner> make_learner_by_id(const std::string& id, std::size_t d, const Fraction& eta,
                                                  const std::optional<BiasVector>& u = std::nullopt);
/// Adversary ids: identity, greedy, brute-force.
std::unique_ptr<Adversary> make_adversary_by_id(const std::string& id, std::size_t d);
std::vector<std::string> learner_ids();
std::vector<std::string> adversary_ids();

struct SweepGrid {
  std::vector<Fraction> etas;
  std::vector<std::size_t> dims;
  /// Empty: n = ceil(size_factor / eta) per cell.
  std::vector<std::size_t> sizes;
  double size_factor = 4.0;
  std::vector<std::string> learners;
  std::vector<std::string> adversaries;
  /// u_i = v (-1)^i per value v.
  std::vector<double> biases{0.25};
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct SweepRow {
  ExcessEstimate excess;
  double loss = 0.0;
  double bayes = 0.0;
  std::optional<double> bound;
  std::string bound_name;
  bool pass = true;
  /// Non-empty when the cell failed; the sweep keeps going.
  std::string error;
};

/// Cells in the fixed order eta, d, n, bias, learner, adversary. Each cell's
/// stream is stable_hash of its description, so rows do not depend on the
/// order cells run in or on the thread count.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, std::size_t threads = 1);

/// Printable form of a real with 17 significant digits.
std::string format_real(double value);

}  // namespace poisonlab
