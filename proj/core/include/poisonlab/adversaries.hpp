#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poisonlab/domain.hpp"
#include "poisonlab/fraction.hpp"
#include "poisonlab/learners.hpp"
#include "poisonlab/random.hpp"

namespace poisonlab {

/// Corruption budget for one sample size: at most floor(eta * n) positions.
struct AttackBudget {
  Fraction eta;
  std::size_t n = 0;
  std::size_t max_corruptions = 0;

  static AttackBudget make(const Fraction& eta, std::size_t n);
  bool admits(const Sample& original, const Sample& attacked) const;
};

/// Probability of predicting wrongly at label y: (1 - y (2 p_plus - 1)) / 2.
double error_probability(double p_plus, Label y);

/// Exact maximizer of the learner's error probability at the target over the
/// Hamming ball. Ties go to the first member in ball enumeration order, so a
/// constant predictor gets back S itself.
Sample brute_force_attack(const PlusProbabilityOracle& predictor, const Sample& s, const Example& target,
                          const AttackBudget& budget, std::span<const Example> alphabet,
                          std::uint64_t cap = kDefaultBallCap);

/// Heuristic attacker. Rewrites up to max_corruptions examples to
/// (target point, opposite label): first those already at the target point
/// carrying the target label, then any other example not yet equal to the
/// replacement. Within each group the highest positions go first, so that
/// learners which split the sample in halves see the corruptions in the half
/// they are trained on.
Sample greedy_flip_attack(const Sample& s, const Example& target, const AttackBudget& budget,
                          std::span<const Example> alphabet);

/// One-dimensional grid poisoning scheme with step eta and half-width m.
/// Positions are integer multiples of eta ("units"); grid points are the even
/// units 2i for -m <= i <= m. xi_{-1}(2i eta) = (2i+1) eta,
/// xi_{+1}(2i eta) = (2i-1) eta, identity everywhere else.
class PoisoningScheme1D {
 public:
  PoisoningScheme1D(Fraction eta, std::int64_t half_width, Fraction requested_eta);

  const Fraction& eta() const { return eta_; }
  /// The budget the caller asked for; differs from eta() when capped at 1/16.
  const Fraction& requested_eta() const { return requested_eta_; }
  bool capped() const { return eta_ != requested_eta_; }
  std::int64_t half_width() const { return m_; }

  double value_of(std::int64_t units) const;
  /// Exact lattice position of u, if u is a multiple of eta (to 1e-12).
  std::optional<std::int64_t> units_of(double u) const;

  bool on_grid(std::int64_t units) const;
  std::int64_t apply_units(Label y, std::int64_t units) const;
  double apply(Label y, double u) const;

 private:
  Fraction eta_;
  std::int64_t m_;
  Fraction requested_eta_;
};

/// Mixture: uniform over the 2m+1 grid points with total weight 1/2, and the
/// endpoints +-(2m+1) eta with weight 1/4 each.
class HardBiasDistribution {
 public:
  struct Atom {
    std::int64_t units;
    double value;
    double weight;
  };

  explicit HardBiasDistribution(const PoisoningScheme1D& scheme);

  std::span<const Atom> atoms() const { return atoms_; }
  /// Endpoint magnitude (2m+1) eta.
  double endpoint() const { return endpoint_; }
  double sample(RandomSource& rng) const;

 private:
  std::vector<Atom> atoms_;
  double endpoint_;
};

struct Scheme1DConstruction {
  PoisoningScheme1D scheme;
  HardBiasDistribution hard;
};

/// Largest m with sqrt(eta)/2 <= (2m+1) eta <= sqrt(eta), decided exactly.
/// Budgets above 1/16 are built at 1/16 and flagged as capped.
Scheme1DConstruction build_scheme_1d(const Fraction& eta);

/// Coordinate-wise lift: xi_{i,y}(u) rewrites only u_i, by the inner scheme.
/// With an inner step of d * eta the lifted budget is eta.
class PoisoningSchemeD {
 public:
  PoisoningSchemeD(PoisoningScheme1D inner, std::size_t dim);

  const PoisoningScheme1D& inner() const { return inner_; }
  std::size_t dim() const { return dim_; }
  /// Effective per-scheme TV budget: inner step / d.
  Fraction budget() const { return inner_.eta() / static_cast<std::int64_t>(dim_); }

  BiasVector apply(std::size_t i, Label y, const BiasVector& u) const;

 private:
  PoisoningScheme1D inner_;
  std::size_t dim_;
};

/// Throws PreconditionError when the inner scheme's requested budget d*eta >= 1.
PoisoningSchemeD lift_scheme(const PoisoningScheme1D& inner, std::size_t dim);

/// One draw from the maximal coupling of D_u and D_u'. A single uniform is
/// split into an overlap segment of length 1 - TV (inverse CDF over
/// min(p, q), both coordinates equal) and a residual segment of length TV
/// (inverse CDF over (p - q)+ and (q - p)+, whose supports are disjoint).
/// Pr[z != z'] equals dist_tv(u, u') exactly.
std::pair<Example, Example> maximal_coupling_draw(const ProductBiasDistribution& a,
                                                  const ProductBiasDistribution& b, RandomSource& rng);

/// Attacker interface used by the experiment harness.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string id() const = 0;
  virtual Sample attack(const Sample& s, const Example& target, const AttackBudget& budget,
                        const Learner& learner) const = 0;
};

std::unique_ptr<Adversary> make_identity_adversary();
/// Empty alphabet disables the alphabet membership check.
std::unique_ptr<Adversary> make_greedy_adversary(std::vector<Example> alphabet = {});
/// Needs learners with exact_plus_probability.
std::unique_ptr<Adversary> make_brute_force_adversary(std::vector<Example> alphabet,
                                                      std::uint64_t cap = kDefaultBallCap);

}  // namespace poisonlab
