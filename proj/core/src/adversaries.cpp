#include "poisonlab/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poisonlab/errors.hpp"

namespace poisonlab {

AttackBudget AttackBudget::make(const Fraction& eta, std::size_t n) {
  if (eta < Fraction(0, 1)) throw PreconditionError("negative attack budget");
  const auto k = static_cast<std::size_t>(eta.floor_times(static_cast<std::int64_t>(n)));
  return AttackBudget{eta, n, std::min(k, n)};
}

bool AttackBudget::admits(const Sample& original, const Sample& attacked) const {
  return attacked.size() == original.size() && hamming_count(original, attacked) <= max_corruptions;
}

double error_probability(double p_plus, Label y) { return y == Label::Plus ? 1.0 - p_plus : p_plus; }

Sample brute_force_attack(const PlusProbabilityOracle& predictor, const Sample& s, const Example& target,
                          const AttackBudget& budget, std::span<const Example> alphabet, std::uint64_t cap) {
  std::optional<Sample> best;
  double best_error = -1.0;
  for_each_in_ball(
      s, budget.max_corruptions, alphabet,
      [&](const Sample& candidate) {
        const double err = error_probability(predictor(candidate, target.point), target.label);
        if (err > best_error) {
          best_error = err;
          best = candidate;
        }
        return true;
      },
      cap);
  return *best;
}

Sample greedy_flip_attack(const Sample& s, const Example& target, const AttackBudget& budget,
                          std::span<const Example> alphabet) {
  const Example replacement{target.point, opposite(target.label)};
  if (!alphabet.empty() && std::find(alphabet.begin(), alphabet.end(), replacement) == alphabet.end())
    throw PreconditionError("greedy attack replacement is not in the alphabet");

  std::vector<std::size_t> order;
  for (std::size_t i = s.size(); i-- > 0;)
    if (s[i] == target) order.push_back(i);
  for (std::size_t i = s.size(); i-- > 0;)
    if (s[i] != target && s[i] != replacement) order.push_back(i);

  std::vector<Example> items(s.begin(), s.end());
  const std::size_t rewrites = std::min(budget.max_corruptions, order.size());
  for (std::size_t j = 0; j < rewrites; ++j) items[order[j]] = replacement;
  return Sample(std::move(items));
}

PoisoningScheme1D::PoisoningScheme1D(Fraction eta, std::int64_t half_width, Fraction requested_eta)
    : eta_(eta), m_(half_width), requested_eta_(requested_eta) {
  if (!(eta_ > Fraction(0, 1))) throw ConstructionError("scheme step must be positive");
  if (m_ < 0) throw ConstructionError("scheme half-width must be nonnegative");
}

double PoisoningScheme1D::value_of(std::int64_t units) const {
  return static_cast<double>(units * eta_.num()) / static_cast<double>(eta_.den());
}

std::optional<std::int64_t> PoisoningScheme1D::units_of(double u) const {
  const double step = eta_.value();
  const double ratio = u / step;
  const auto units = static_cast<std::int64_t>(std::llround(ratio));
  if (std::abs(value_of(units) - u) <= 1e-12 * std::max(1.0, std::abs(u))) return units;
  return std::nullopt;
}

bool PoisoningScheme1D::on_grid(std::int64_t units) const {
  return units % 2 == 0 && units >= -2 * m_ && units <= 2 * m_;
}

std::int64_t PoisoningScheme1D::apply_units(Label y, std::int64_t units) const {
  if (!on_grid(units)) return units;
  return y == Label::Minus ? units + 1 : units - 1;
}

double PoisoningScheme1D::apply(Label y, double u) const {
  const auto units = units_of(u);
  if (!units || !on_grid(*units)) return u;
  return value_of(apply_units(y, *units));
}

HardBiasDistribution::HardBiasDistribution(const PoisoningScheme1D& scheme) {
  const std::int64_t m = scheme.half_width();
  const double grid_weight = 1.0 / (2.0 * static_cast<double>(2 * m + 1));
  atoms_.push_back({-(2 * m + 1), scheme.value_of(-(2 * m + 1)), 0.25});
  for (std::int64_t i = -m; i <= m; ++i) atoms_.push_back({2 * i, scheme.value_of(2 * i), grid_weight});
  atoms_.push_back({2 * m + 1, scheme.value_of(2 * m + 1), 0.25});
  endpoint_ = scheme.value_of(2 * m + 1);
}

double HardBiasDistribution::sample(RandomSource& rng) const {
  const double target = rng.uniform01();
  double acc = 0.0;
  for (const Atom& a : atoms_) {
    acc += a.weight;
    if (target < acc) return a.value;
  }
  return atoms_.back().value;
}

Scheme1DConstruction build_scheme_1d(const Fraction& eta) {
  const Fraction zero(0, 1);
  const Fraction cap(1, 16);
  if (!(eta > zero)) throw PreconditionError("scheme budget must be positive");
  const Fraction step = eta > cap ? cap : eta;

  // Odd s = 2m+1 with 1/4 <= s^2 * eta <= 1, largest first.
  const auto num = static_cast<__int128>(step.num());
  const auto den = static_cast<__int128>(step.den());
  std::int64_t s = static_cast<std::int64_t>(std::floor(1.0 / std::sqrt(step.value()))) + 2;
  if (s % 2 == 0) ++s;
  for (; s >= 1; s -= 2) {
    const __int128 sq = static_cast<__int128>(s) * s;
    if (sq * num <= den) break;
  }
  if (s < 1 || 4 * static_cast<__int128>(s) * s * num < den)
    throw ConstructionError("no grid half-width satisfies the bracket for eta = " + step.to_string());

  PoisoningScheme1D scheme(step, (s - 1) / 2, eta);
  HardBiasDistribution hard(scheme);
  return Scheme1DConstruction{scheme, hard};
}

PoisoningSchemeD::PoisoningSchemeD(PoisoningScheme1D inner, std::size_t dim) : inner_(std::move(inner)), dim_(dim) {
  if (dim_ == 0) throw PreconditionError("scheme dimension must be >= 1");
}

BiasVector PoisoningSchemeD::apply(std::size_t i, Label y, const BiasVector& u) const {
  if (u.dim() != dim_) throw DomainMismatchError("bias vector dimension differs from scheme dimension");
  if (i >= dim_) throw DomainMismatchError("scheme coordinate out of range");
  return u.with_coord(i, inner_.apply(y, u[i]));
}

PoisoningSchemeD lift_scheme(const PoisoningScheme1D& inner, std::size_t dim) {
  if (inner.requested_eta() >= Fraction(1, 1))
    throw PreconditionError("lifting needs d * eta < 1 (inner budget " + inner.requested_eta().to_string() + ")");
  return PoisoningSchemeD(inner, dim);
}

std::pair<Example, Example> maximal_coupling_draw(const ProductBiasDistribution& a,
                                                  const ProductBiasDistribution& b, RandomSource& rng) {
  if (a.dim() != b.dim()) throw DomainMismatchError("coupling of distributions with different dimensions");
  const auto pa = a.atoms();
  const auto pb = b.atoms();
  std::vector<double> overlap(pa.size()), over_a(pa.size()), over_b(pa.size());
  double overlap_mass = 0.0, residual_a = 0.0, residual_b = 0.0;
  for (std::size_t j = 0; j < pa.size(); ++j) {
    overlap[j] = std::min(pa[j].second, pb[j].second);
    over_a[j] = std::max(pa[j].second - pb[j].second, 0.0);
    over_b[j] = std::max(pb[j].second - pa[j].second, 0.0);
    overlap_mass += overlap[j];
    residual_a += over_a[j];
    residual_b += over_b[j];
  }

  auto inverse_cdf = [&](const std::vector<double>& w, double total, double v) {
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] <= 0.0) continue;
      last = j;
      acc += w[j] / total;
      if (v < acc) return j;
    }
    return last;
  };

  const double v = rng.uniform01();
  if (v < overlap_mass || residual_a <= 0.0 || residual_b <= 0.0) {
    const double scaled = overlap_mass > 0.0 ? std::min(v / overlap_mass, 1.0) : 0.0;
    const std::size_t j = inverse_cdf(overlap, overlap_mass, scaled);
    return {pa[j].first, pb[j].first};
  }
  const double tv = 1.0 - overlap_mass;
  const double scaled = std::min((v - overlap_mass) / tv, 1.0);
  return {pa[inverse_cdf(over_a, residual_a, scaled)].first, pb[inverse_cdf(over_b, residual_b, scaled)].first};
}

namespace {

class IdentityAdversary : public Adversary {
 public:
  std::string id() const override { return "identity"; }
  Sample attack(const Sample& s, const Example&, const AttackBudget&, const Learner&) const override { return s; }
};

class GreedyAdversary : public Adversary {
 public:
  explicit GreedyAdversary(std::vector<Example> alphabet) : alphabet_(std::move(alphabet)) {}
  std::string id() const override { return "greedy"; }
  Sample attack(const Sample& s, const Example& target, const AttackBudget& budget, const Learner&) const override {
    return greedy_flip_attack(s, target, budget, alphabet_);
  }

 private:
  std::vector<Example> alphabet_;
};

class BruteForceAdversary : public Adversary {
 public:
  BruteForceAdversary(std::vector<Example> alphabet, std::uint64_t cap) : alphabet_(std::move(alphabet)), cap_(cap) {
    if (alphabet_.empty()) throw PreconditionError("brute-force adversary needs a nonempty alphabet");
  }
  std::string id() const override { return "brute-force"; }
  Sample attack(const Sample& s, const Example& target, const AttackBudget& budget,
                const Learner& learner) const override {
    auto oracle = [&learner](const Sample& candidate, Point x) {
      auto p = learner.exact_plus_probability(candidate, x);
      if (!p) throw PreconditionError("brute-force adversary needs exact plus-probabilities from " + learner.id());
      return *p;
    };
    return brute_force_attack(oracle, s, target, budget, alphabet_, cap_);
  }

 private:
  std::vector<Example> alphabet_;
  std::uint64_t cap_;
};

}  // namespace

std::unique_ptr<Adversary> make_identity_adversary() { return std::make_unique<IdentityAdversary>(); }

std::unique_ptr<Adversary> make_greedy_adversary(std::vector<Example> alphabet) {
  return std::make_unique<GreedyAdversary>(std::move(alphabet));
}

std::unique_ptr<Adversary> make_brute_force_adversary(std::vector<Example> alphabet, std::uint64_t cap) {
  return std::make_unique<BruteForceAdversary>(std::move(alphabet), cap);
}

}  // namespace poisonlab
