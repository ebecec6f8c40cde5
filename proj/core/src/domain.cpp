#include "poisonlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "poisonlab/errors.hpp"

namespace poisonlab {

Label label_from_bit(int bit) {
  if (bit != 0 && bit != 1) throw PreconditionError("label bit must be 0 or 1");
  return bit == 1 ? Label::Plus : Label::Minus;
}

Sample::Sample(std::vector<Example> items) : items_(std::move(items)) {
  if (items_.empty()) throw PreconditionError("sample must contain at least one example");
}

Sample Sample::with(std::size_t i, const Example& replacement) const {
  std::vector<Example> copy = items_;
  copy.at(i) = replacement;
  return Sample(std::move(copy));
}

Sample Sample::slice(std::size_t first, std::size_t count) const {
  if (first + count > items_.size()) throw PreconditionError("slice out of range");
  return Sample(std::vector<Example>(items_.begin() + static_cast<std::ptrdiff_t>(first),
                                     items_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

Sample Sample::select(std::span<const std::size_t> positions) const {
  std::vector<Example> picked;
  picked.reserve(positions.size());
  for (std::size_t p : positions) picked.push_back(items_.at(p));
  return Sample(std::move(picked));
}

Hypothesis::Hypothesis(std::vector<Label> values) : values_(std::move(values)) {
  if (values_.empty()) throw PreconditionError("hypothesis over an empty domain");
}

Hypothesis Hypothesis::constant(std::size_t domain_size, Label y) {
  return Hypothesis(std::vector<Label>(domain_size, y));
}

Hypothesis Hypothesis::from_mask(std::size_t domain_size, std::uint64_t mask) {
  std::vector<Label> values(domain_size);
  for (std::size_t j = 0; j < domain_size; ++j) values[j] = ((mask >> j) & 1U) ? Label::Plus : Label::Minus;
  return Hypothesis(std::move(values));
}

Label Hypothesis::operator()(Point x) const {
  if (x.index >= values_.size())
    throw DomainMismatchError("point " + std::to_string(x.index) + " outside domain of size " +
                              std::to_string(values_.size()));
  return values_[x.index];
}

std::strong_ordering operator<=>(const Hypothesis& a, const Hypothesis& b) {
  return std::lexicographical_compare_three_way(
      a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(),
      [](Label l, Label r) { return sign(l) <=> sign(r); });
}

HypothesisClass::HypothesisClass(std::size_t domain_size, std::vector<Hypothesis> hypotheses)
    : domain_size_(domain_size), hypotheses_(std::move(hypotheses)) {
  if (hypotheses_.empty()) throw PreconditionError("hypothesis class must be nonempty");
  std::set<Hypothesis> seen;
  for (const Hypothesis& h : hypotheses_) {
    if (h.domain_size() != domain_size_)
      throw DomainMismatchError("hypothesis domain size differs from class domain size");
    if (!seen.insert(h).second) throw PreconditionError("duplicate hypothesis in class");
  }
}

HypothesisClass HypothesisClass::all_labelings(std::size_t domain_size) {
  if (domain_size == 0 || domain_size > 20) throw PreconditionError("all_labelings needs 1 <= N <= 20");
  std::vector<Hypothesis> hs;
  hs.reserve(std::size_t{1} << domain_size);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << domain_size); ++mask)
    hs.push_back(Hypothesis::from_mask(domain_size, mask));
  return HypothesisClass(domain_size, std::move(hs));
}

BiasVector::BiasVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw PreconditionError("bias vector must have dimension >= 1");
  for (double c : coords_)
    if (!(c >= -0.5 && c <= 0.5)) throw PreconditionError("bias coordinate outside [-1/2, 1/2]");
}

BiasVector BiasVector::with_coord(std::size_t i, double value) const {
  std::vector<double> copy = coords_;
  copy.at(i) = value;
  return BiasVector(std::move(copy));
}

double ProductBiasDistribution::probability(const Example& z) const {
  if (z.point.index >= dim()) return 0.0;
  return (0.5 + sign(z.label) * bias_[z.point.index]) / static_cast<double>(dim());
}

std::vector<std::pair<Example, double>> ProductBiasDistribution::atoms() const {
  std::vector<std::pair<Example, double>> out;
  out.reserve(2 * dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (Label y : {Label::Minus, Label::Plus}) {
      Example z{Point{i}, y};
      out.emplace_back(z, probability(z));
    }
  return out;
}

std::size_t disagreement_count(const Hypothesis& h, const Sample& s) {
  std::size_t count = 0;
  for (const Example& z : s)
    if (h(z.point) != z.label) ++count;
  return count;
}

double sample_loss(const Hypothesis& h, const Sample& s) {
  return static_cast<double>(disagreement_count(h, s)) / static_cast<double>(s.size());
}

double population_loss(const Hypothesis& h, const ProductBiasDistribution& dist) {
  if (h.domain_size() != dist.dim()) throw DomainMismatchError("hypothesis and distribution dimensions differ");
  double total = 0.0;
  for (std::size_t i = 0; i < dist.dim(); ++i) total += 0.5 - sign(h(Point{i})) * dist.bias()[i];
  return total / static_cast<double>(dist.dim());
}

double bayes_loss(const ProductBiasDistribution& dist) {
  double total = 0.0;
  for (double u : dist.bias().coords()) total += std::min(0.5 - u, 0.5 + u);
  return total / static_cast<double>(dist.dim());
}

std::size_t hamming_count(const Sample& a, const Sample& b) {
  if (a.size() != b.size()) throw PreconditionError("hamming distance between samples of different lengths");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++count;
  return count;
}

double hamming_distance(const Sample& a, const Sample& b) {
  return static_cast<double>(hamming_count(a, b)) / static_cast<double>(a.size());
}

bool within_ball(const Sample& a, const Sample& b, const Fraction& eta) {
  const auto changed = static_cast<std::int64_t>(hamming_count(a, b));
  return changed <= eta.floor_times(static_cast<std::int64_t>(a.size()));
}

double dist_tv(const BiasVector& u, const BiasVector& v) {
  if (u.dim() != v.dim()) throw DomainMismatchError("bias vectors of different dimension");
  double total = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) total += std::abs(u[i] - v[i]);
  return total / static_cast<double>(u.dim());
}

std::vector<Example> full_alphabet(std::size_t domain_size) {
  std::vector<Example> out;
  out.reserve(2 * domain_size);
  for (std::size_t i = 0; i < domain_size; ++i)
    for (Label y : {Label::Minus, Label::Plus}) out.push_back(Example{Point{i}, y});
  return out;
}

std::uint64_t ball_size_bound(std::size_t n, std::size_t max_corruptions, std::size_t alphabet_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::size_t k = std::min(n, max_corruptions);
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;  // C(n, j)
  unsigned __int128 power = 1;  // |A|^j
  for (std::size_t j = 0; j <= k; ++j) {
    if (j > 0) {
      binom = binom * (n - j + 1) / j;
      power *= alphabet_size;
    }
    total += binom * power;
    if (total > kMax || binom > kMax || power > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(total);
}

namespace detail {
void check_ball_cap(std::size_t n, std::size_t max_corruptions, std::size_t alphabet_size, std::uint64_t cap) {
  const std::uint64_t bound = ball_size_bound(n, max_corruptions, alphabet_size);
  if (bound > cap)
    throw EnumerationTooLargeError("ball enumeration of up to " + std::to_string(bound) +
                                   " samples exceeds cap " + std::to_string(cap));
}
}  // namespace detail

std::vector<Sample> ball_enumerate(const Sample& s, std::size_t max_corruptions, std::span<const Example> alphabet,
                                   std::uint64_t cap) {
  std::vector<Sample> out;
  for_each_in_ball(
      s, max_corruptions, alphabet,
      [&](const Sample& member) {
        out.push_back(member);
        return true;
      },
      cap);
  return out;
}

std::vector<Sample> ball_enumerate(const Sample& s, const Fraction& eta, std::span<const Example> alphabet,
                                   std::uint64_t cap) {
  const std::int64_t k = eta.floor_times(static_cast<std::int64_t>(s.size()));
  return ball_enumerate(s, static_cast<std::size_t>(std::max<std::int64_t>(k, 0)), alphabet, cap);
}

Example draw_example(const ProductBiasDistribution& dist, RandomSource& rng) {
  const auto i = static_cast<std::size_t>(rng.uniform_index(dist.dim()));
  const bool plus = rng.uniform01() < 0.5 + dist.bias()[i];
  return Example{Point{i}, plus ? Label::Plus : Label::Minus};
}

Sample draw_sample(const ProductBiasDistribution& dist, std::size_t n, RandomSource& rng) {
  if (n == 0) throw PreconditionError("sample size must be >= 1");
  std::vector<Example> items;
  items.reserve(n);
  for (std::size_t j = 0; j < n; ++j) items.push_back(draw_example(dist, rng));
  return Sample(std::move(items));
}

}  // namespace poisonlab
