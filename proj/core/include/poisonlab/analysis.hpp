#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "poisonlab/adversaries.hpp"
#include "poisonlab/domain.hpp"
#include "poisonlab/learners.hpp"
#include "poisonlab/random.hpp"

namespace poisonlab {

/// Representatives of H under h ~_X h' iff h and h' agree on X. The
/// representative of each class is its lowest-index member of the parent.
class RestrictionClass {
 public:
  RestrictionClass(std::vector<Point> points, HypothesisClass representatives, std::vector<std::size_t> parent_index);

  /// Distinct points of X, sorted.
  std::span<const Point> points() const { return points_; }
  const HypothesisClass& representatives() const { return representatives_; }
  std::size_t size() const { return representatives_.size(); }
  /// Index in the parent class of each representative.
  std::span<const std::size_t> parent_index() const { return parent_index_; }

 private:
  std::vector<Point> points_;
  HypothesisClass representatives_;
  std::vector<std::size_t> parent_index_;
};

/// Duplicated points in X are ignored. Throws PreconditionError on empty X.
RestrictionClass restrict_dedupe(const HypothesisClass& hs, std::span<const Point> points);

/// sum_{i=0}^{d} C(n, i), saturating at UINT64_MAX.
std::uint64_t sauer_bound(std::size_t n, std::size_t d);
/// (e n / d)^d; 1 for d = 0.
double sauer_bound_real(std::size_t n, std::size_t d);

/// Brute-force shattering search. Needs N <= 20 and m <= 2^16.
std::size_t vc_dimension(const HypothesisClass& hs);

/// sup over h in H of min over h' in the subset of Pr_x[h(x) != h'(x)], with
/// x drawn from the given point weights (one per domain point).
double cover_radius(const HypothesisClass& hs, const HypothesisClass& subset, std::span<const double> marginal);
double cover_radius_uniform(const HypothesisClass& hs, const HypothesisClass& subset);

/// F_i(u) = E_S[p_plus(S, x_i)] - 1/2, the ±1-convention F divided by 2.
struct FTable {
  BiasVector u;
  std::vector<double> values;
  std::vector<double> std_errors;
  std::size_t n = 0;
  std::size_t trials = 0;
};

/// Trial j draws its sample from rng.substream(j).substream(0) and hands
/// substream(1 + i) to the learner for coordinate i. Sums are pairwise over
/// trials in index order, so the table does not depend on the thread count.
FTable estimate_F(const Learner& learner, const BiasVector& u, std::size_t n, std::size_t trials,
                  const RandomSource& rng, std::size_t threads = 1);

/// Exact F for d = 1 by summing over all 2^n label sequences (n <= 20).
/// Needs exact_plus_probability.
double exact_F_1d(const Learner& learner, double u, std::size_t n);

struct FValue {
  double value = 0.0;
  double std_error = 0.0;
};

/// F_i evaluated at a bias vector.
using FOracle = std::function<FValue(const BiasVector& at, std::size_t coordinate)>;

/// Point (bias vector, coordinate) at which the excess formula reads F.
struct FEvaluation {
  BiasVector at;
  std::size_t coordinate = 0;
};

/// The 2d evaluations xi_{i,y}(u) in order (0,-1), (0,+1), (1,-1), ...
std::vector<FEvaluation> needed_points(const BiasVector& u, const PoisoningSchemeD& scheme);

/// Excess as an affine function of the F values it reads:
/// constant + sum_j coefficient_j * F(evaluation_j). Repeated evaluations are
/// merged, so a standard error can be propagated per distinct estimate.
struct ExcessTerms {
  double constant = 0.0;
  std::vector<FEvaluation> evaluations;
  std::vector<double> coefficients;

  void add(const FEvaluation& at, double coefficient);
  void add(const ExcessTerms& other, double weight);
};

ExcessTerms oblivious_excess_terms(const BiasVector& u, const PoisoningSchemeD& scheme);

struct ExcessValue {
  double value = 0.0;
  /// Propagated from the F standard errors, treating distinct evaluations as
  /// independent estimates.
  double std_error = 0.0;
};

ExcessValue evaluate_terms(const ExcessTerms& terms, const FOracle& f);

/// (1/d) sum_{i,y} (1/2 + y u_i)(1/2 - y F_i(xi_{i,y}(u))) - bayes_loss(D_u).
ExcessValue oblivious_excess(const FOracle& f, const BiasVector& u, const PoisoningSchemeD& scheme);
/// Same, reading F from a table per evaluation point. Throws
/// PreconditionError when a needed point has no table.
ExcessValue oblivious_excess(std::span<const FTable> tables, const BiasVector& u, const PoisoningSchemeD& scheme);

struct StabilityQuery {
  Point x;
  double p_plus = 0.0;
  double p_plus_neighbor = 0.0;
  double flip_probability = 0.0;
  bool flip_bound_holds = false;
};

struct StabilityReport {
  double temperature = 0.0;
  /// log Pr_S(h) - log Pr_S'(h) per hypothesis.
  std::vector<double> log_gaps;
  double max_abs_gap = 0.0;
  /// 2 t eta.
  double ratio_bound = 0.0;
  bool ratio_bound_holds = false;
  /// 4 t eta.
  double flip_bound = 0.0;
  std::vector<StabilityQuery> queries;
  bool all_hold = false;
};

/// Throws PreconditionError when hamming_distance(S, S') > eta.
StabilityReport stability_certificate(const HypothesisClass& hs, const Sample& s, const Sample& neighbor,
                                      const ExpMechanismConfig& cfg, std::span<const Point> queries,
                                      double tolerance = 1e-9);

}  // namespace poisonlab
