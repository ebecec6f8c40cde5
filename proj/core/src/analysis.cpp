#include "poisonlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>

#include "poisonlab/errors.hpp"
#include "poisonlab/parallel.hpp"

namespace poisonlab {

namespace {

// Pattern of h on the given points as a bit string, bit j = h(points[j]) == +1.
std::vector<std::uint8_t> pattern(const Hypothesis& h, std::span<const Point> points) {
  std::vector<std::uint8_t> bits(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) bits[j] = static_cast<std::uint8_t>(to_bit(h(points[j])));
  return bits;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

RestrictionClass::RestrictionClass(std::vector<Point> points, HypothesisClass representatives,
                                   std::vector<std::size_t> parent_index)
    : points_(std::move(points)), representatives_(std::move(representatives)), parent_index_(std::move(parent_index)) {}

RestrictionClass restrict_dedupe(const HypothesisClass& hs, std::span<const Point> points) {
  if (points.empty()) throw PreconditionError("restriction to an empty point set");
  std::vector<Point> xs(points.begin(), points.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.back().index >= hs.domain_size()) throw DomainMismatchError("restriction point outside the class domain");

  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  std::vector<Hypothesis> reps;
  std::vector<std::size_t> parents;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    if (seen.emplace(pattern(hs[j], xs), j).second) {
      reps.push_back(hs[j]);
      parents.push_back(j);
    }
  }
  return RestrictionClass(std::move(xs), HypothesisClass(hs.domain_size(), std::move(reps)), std::move(parents));
}

std::uint64_t sauer_bound(std::size_t n, std::size_t d) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(n, i)
  bool saturated = false;
  for (std::size_t i = 0; i <= std::min(n, d); ++i) {
    if (i > 0) {
      // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact in 128 bits.
      const unsigned __int128 next = static_cast<unsigned __int128>(c) * (n - i + 1) / i;
      if (saturated || next > std::numeric_limits<std::uint64_t>::max()) {
        saturated = true;
        c = std::numeric_limits<std::uint64_t>::max();
      } else {
        c = static_cast<std::uint64_t>(next);
      }
    }
    total = saturating_add(total, c);
  }
  return total;
}

double sauer_bound_real(std::size_t n, std::size_t d) {
  if (d == 0) return 1.0;
  return std::pow(std::numbers::e * static_cast<double>(n) / static_cast<double>(d), static_cast<double>(d));
}

std::size_t vc_dimension(const HypothesisClass& hs) {
  const std::size_t domain = hs.domain_size();
  if (domain > 20) throw EnumerationTooLargeError("vc_dimension needs a domain of at most 20 points");
  if (hs.size() > (std::size_t{1} << 16)) throw EnumerationTooLargeError("vc_dimension needs at most 65536 hypotheses");

  std::vector<std::uint32_t> masks(hs.size(), 0);
  for (std::size_t j = 0; j < hs.size(); ++j)
    for (std::size_t x = 0; x < domain; ++x)
      if (hs[j](Point{x}) == Label::Plus) masks[j] |= std::uint32_t{1} << x;

  std::size_t best = 0;
  std::vector<std::uint8_t> hit;
  for (std::size_t s = 1; s <= domain; ++s) {
    if ((std::size_t{1} << s) > hs.size()) break;
    bool found = false;
    std::vector<std::size_t> subset(s);
    for (std::size_t a = 0; a < s; ++a) subset[a] = a;
    while (!found) {
      hit.assign(std::size_t{1} << s, 0);
      std::size_t distinct = 0;
      for (std::uint32_t mask : masks) {
        std::size_t code = 0;
        for (std::size_t a = 0; a < s; ++a) code |= static_cast<std::size_t>((mask >> subset[a]) & 1u) << a;
        if (!hit[code]) {
          hit[code] = 1;
          ++distinct;
        }
      }
      if (distinct == hit.size()) {
        found = true;
        break;
      }
      std::size_t a = s;
      while (a > 0 && subset[a - 1] == domain - s + (a - 1)) --a;
      if (a == 0) break;
      ++subset[a - 1];
      for (std::size_t b = a; b < s; ++b) subset[b] = subset[b - 1] + 1;
    }
    if (!found) break;  // no s-set shattered, so no larger set either
    best = s;
  }
  return best;
}

double cover_radius(const HypothesisClass& hs, const HypothesisClass& subset, std::span<const double> marginal) {
  if (subset.size() == 0) throw PreconditionError("cover radius of an empty subset");
  if (subset.domain_size() != hs.domain_size() || marginal.size() != hs.domain_size())
    throw DomainMismatchError("cover radius inputs over different domains");
  double radius = 0.0;
  for (const Hypothesis& h : hs) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Hypothesis& g : subset) {
      double mass = 0.0;
      for (std::size_t x = 0; x < marginal.size(); ++x)
        if (h.values()[x] != g.values()[x]) mass += marginal[x];
      nearest = std::min(nearest, mass);
    }
    radius = std::max(radius, nearest);
  }
  return radius;
}

double cover_radius_uniform(const HypothesisClass& hs, const HypothesisClass& subset) {
  const std::vector<double> marginal(hs.domain_size(), 1.0 / static_cast<double>(hs.domain_size()));
  return cover_radius(hs, subset, marginal);
}

FTable estimate_F(const Learner& learner, const BiasVector& u, std::size_t n, std::size_t trials,
                  const RandomSource& rng, std::size_t threads) {
  if (trials == 0) throw PreconditionError("estimate_F needs at least one trial");
  const std::size_t d = u.dim();
  const ProductBiasDistribution dist(u);
  // Row-major trials x d.
  std::vector<double> draws(trials * d);
  parallel_for(trials, threads, [&](std::size_t j) {
    const RandomSource trial = rng.substream(j);
    RandomSource sample_stream = trial.substream(0);
    const Sample s = draw_sample(dist, n, sample_stream);
    for (std::size_t i = 0; i < d; ++i) {
      RandomSource learner_stream = trial.substream(1 + i);
      draws[j * d + i] = learner.plus_probability(s, Point{i}, learner_stream) - 0.5;
    }
  });

  FTable table{u, std::vector<double>(d), std::vector<double>(d), n, trials};
  std::vector<double> column(trials);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < trials; ++j) column[j] = draws[j * d + i];
    const double mean = pairwise_sum(column) / static_cast<double>(trials);
    for (std::size_t j = 0; j < trials; ++j) column[j] = (draws[j * d + i] - mean) * (draws[j * d + i] - mean);
    const double var = trials > 1 ? pairwise_sum(column) / static_cast<double>(trials - 1) : 0.0;
    table.values[i] = std::clamp(mean, -0.5, 0.5);
    table.std_errors[i] = std::sqrt(var / static_cast<double>(trials));
  }
  return table;
}

double exact_F_1d(const Learner& learner, double u, std::size_t n) {
  if (n == 0 || n > 20) throw EnumerationTooLargeError("exact_F_1d needs 1 <= n <= 20");
  if (!(u >= -0.5 && u <= 0.5)) throw PreconditionError("bias outside [-1/2, 1/2]");
  const double plus = 0.5 + u;
  const double minus = 0.5 - u;
  double total = 0.0;
  std::vector<Example> items(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool bit = (mask >> j) & 1u;
      ones += bit;
      items[j] = Example{Point{0}, bit ? Label::Plus : Label::Minus};
    }
    const double weight = std::pow(plus, static_cast<double>(ones)) * std::pow(minus, static_cast<double>(n - ones));
    if (weight == 0.0) continue;
    auto p = learner.exact_plus_probability(Sample(items), Point{0});
    if (!p) throw PreconditionError("exact_F_1d needs exact plus-probabilities from " + learner.id());
    total += weight * *p;
  }
  return total - 0.5;
}

std::vector<FEvaluation> needed_points(const BiasVector& u, const PoisoningSchemeD& scheme) {
  if (u.dim() != scheme.dim()) throw DomainMismatchError("bias vector dimension differs from scheme dimension");
  std::vector<FEvaluation> out;
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (Label y : {Label::Minus, Label::Plus}) out.push_back({scheme.apply(i, y, u), i});
  return out;
}

void ExcessTerms::add(const FEvaluation& at, double coefficient) {
  for (std::size_t j = 0; j < evaluations.size(); ++j) {
    if (evaluations[j].coordinate == at.coordinate && evaluations[j].at == at.at) {
      coefficients[j] += coefficient;
      return;
    }
  }
  evaluations.push_back(at);
  coefficients.push_back(coefficient);
}

void ExcessTerms::add(const ExcessTerms& other, double weight) {
  constant += weight * other.constant;
  for (std::size_t j = 0; j < other.evaluations.size(); ++j) add(other.evaluations[j], weight * other.coefficients[j]);
}

ExcessTerms oblivious_excess_terms(const BiasVector& u, const PoisoningSchemeD& scheme) {
  const double d = static_cast<double>(u.dim());
  ExcessTerms terms;
  terms.constant = -bayes_loss(ProductBiasDistribution(u));
  const auto points = needed_points(u, scheme);
  std::size_t k = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    for (Label y : {Label::Minus, Label::Plus}) {
      const double mass = (0.5 + sign(y) * u[i]) / d;
      terms.constant += 0.5 * mass;
      terms.add(points[k++], -sign(y) * mass);
    }
  }
  return terms;
}

ExcessValue evaluate_terms(const ExcessTerms& terms, const FOracle& f) {
  ExcessValue out{terms.constant, 0.0};
  double var = 0.0;
  for (std::size_t j = 0; j < terms.evaluations.size(); ++j) {
    const FValue v = f(terms.evaluations[j].at, terms.evaluations[j].coordinate);
    out.value += terms.coefficients[j] * v.value;
    var += terms.coefficients[j] * terms.coefficients[j] * v.std_error * v.std_error;
  }
  out.std_error = std::sqrt(var);
  return out;
}

ExcessValue oblivious_excess(const FOracle& f, const BiasVector& u, const PoisoningSchemeD& scheme) {
  return evaluate_terms(oblivious_excess_terms(u, scheme), f);
}

ExcessValue oblivious_excess(std::span<const FTable> tables, const BiasVector& u, const PoisoningSchemeD& scheme) {
  auto lookup = [&](const BiasVector& at, std::size_t i) {
    for (const FTable& t : tables)
      if (t.u == at) return FValue{t.values.at(i), t.std_errors.at(i)};
    throw PreconditionError("no F table at a point the scheme maps to");
  };
  return oblivious_excess(lookup, u, scheme);
}

StabilityReport stability_certificate(const HypothesisClass& hs, const Sample& s, const Sample& neighbor,
                                      const ExpMechanismConfig& cfg, std::span<const Point> queries, double tolerance) {
  cfg.validate();
  if (s.size() != neighbor.size()) throw PreconditionError("stability certificate needs samples of equal length");
  if (hamming_distance(s, neighbor) > cfg.eta + 1e-12)
    throw PreconditionError("samples are farther apart than eta");

  StabilityReport report;
  report.temperature = cfg.temperature(hs.size());
  report.ratio_bound = 2.0 * report.temperature * cfg.eta;
  report.flip_bound = 4.0 * report.temperature * cfg.eta;

  const auto log_a = exp_mechanism_log_dist(hs, s, cfg);
  const auto log_b = exp_mechanism_log_dist(hs, neighbor, cfg);
  report.log_gaps.resize(hs.size());
  for (std::size_t j = 0; j < hs.size(); ++j) {
    report.log_gaps[j] = log_a[j] - log_b[j];
    report.max_abs_gap = std::max(report.max_abs_gap, std::abs(report.log_gaps[j]));
  }
  report.ratio_bound_holds = report.max_abs_gap <= report.ratio_bound + tolerance;
  report.all_hold = report.ratio_bound_holds;

  for (Point x : queries) {
    StabilityQuery q{x, predict_prob(hs, s, x, cfg).p_plus, predict_prob(hs, neighbor, x, cfg).p_plus, 0.0, false};
    q.flip_probability = std::abs(q.p_plus - q.p_plus_neighbor);
    q.flip_bound_holds = q.flip_probability <= report.flip_bound + 1e-12;
    report.all_hold = report.all_hold && q.flip_bound_holds;
    report.queries.push_back(q);
  }
  return report;
}

}  // namespace poisonlab
