#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "poisonlab/fraction.hpp"
#include "poisonlab/random.hpp"

namespace poisonlab {

// Labels are stored as -1/+1. Losses use the 0/1 disagreement convention, so
// every loss in this library lies in [0, 1]. to_bit/label_from_bit bridge to
// the {0,1} label space (+1 <-> 1, -1 <-> 0).
enum class Label : std::int8_t { Minus = -1, Plus = 1 };

constexpr int sign(Label y) { return static_cast<int>(y); }
constexpr Label opposite(Label y) { return y == Label::Plus ? Label::Minus : Label::Plus; }
constexpr int to_bit(Label y) { return y == Label::Plus ? 1 : 0; }
Label label_from_bit(int bit);

struct Point {
  std::size_t index = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct Example {
  Point point;
  Label label = Label::Plus;

  friend bool operator==(const Example&, const Example&) = default;
  friend std::strong_ordering operator<=>(const Example& a, const Example& b) {
    if (auto c = a.point <=> b.point; c != 0) return c;
    return sign(a.label) <=> sign(b.label);
  }
};

/// Ordered, fixed-length sequence of examples. Position matters: the Hamming
/// distance between samples compares entries index by index.
class Sample {
 public:
  explicit Sample(std::vector<Example> items);

  std::size_t size() const { return items_.size(); }
  const Example& operator[](std::size_t i) const { return items_[i]; }
  std::span<const Example> items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// Copy with position i replaced.
  Sample with(std::size_t i, const Example& replacement) const;
  /// Sub-sample over [first, first + count).
  Sample slice(std::size_t first, std::size_t count) const;
  /// Sub-sample at the given (sorted) positions.
  Sample select(std::span<const std::size_t> positions) const;

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<Example> items_;
};

class Hypothesis {
 public:
  explicit Hypothesis(std::vector<Label> values);

  static Hypothesis constant(std::size_t domain_size, Label y);
  /// Bit j of mask set means +1 at point j.
  static Hypothesis from_mask(std::size_t domain_size, std::uint64_t mask);

  std::size_t domain_size() const { return values_.size(); }
  Label operator()(Point x) const;
  std::span<const Label> values() const { return values_; }

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
  friend std::strong_ordering operator<=>(const Hypothesis& a, const Hypothesis& b);

 private:
  std::vector<Label> values_;
};

/// Explicit finite class of distinct hypotheses over domain {0, ..., N-1}.
class HypothesisClass {
 public:
  HypothesisClass(std::size_t domain_size, std::vector<Hypothesis> hypotheses);

  /// All 2^N labelings of N points (N <= 20).
  static HypothesisClass all_labelings(std::size_t domain_size);

  std::size_t domain_size() const { return domain_size_; }
  std::size_t size() const { return hypotheses_.size(); }
  const Hypothesis& operator[](std::size_t i) const { return hypotheses_[i]; }
  std::span<const Hypothesis> hypotheses() const { return hypotheses_; }
  auto begin() const { return hypotheses_.begin(); }
  auto end() const { return hypotheses_.end(); }

 private:
  std::size_t domain_size_;
  std::vector<Hypothesis> hypotheses_;
};

/// Bias parameter u of D_u, every coordinate in [-1/2, 1/2].
class BiasVector {
 public:
  explicit BiasVector(std::vector<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  BiasVector with_coord(std::size_t i, double value) const;

  friend bool operator==(const BiasVector&, const BiasVector&) = default;
  friend auto operator<=>(const BiasVector&, const BiasVector&) = default;

 private:
  std::vector<double> coords_;
};

/// D_u: uniform marginal over d points, Pr[(x_i, y)] = (1/2 + y u_i) / d.
class ProductBiasDistribution {
 public:
  explicit ProductBiasDistribution(BiasVector bias) : bias_(std::move(bias)) {}

  const BiasVector& bias() const { return bias_; }
  std::size_t dim() const { return bias_.dim(); }

  double probability(const Example& z) const;
  /// The 2d atoms in canonical order (x_0,-1), (x_0,+1), (x_1,-1), ...
  std::vector<std::pair<Example, double>> atoms() const;

 private:
  BiasVector bias_;
};

std::size_t disagreement_count(const Hypothesis& h, const Sample& s);
/// L_S(h): fraction of positions where h disagrees with the label.
double sample_loss(const Hypothesis& h, const Sample& s);
/// L_D(h) in closed form: (1/d) sum_i (1/2 - h(x_i) u_i).
double population_loss(const Hypothesis& h, const ProductBiasDistribution& dist);
/// (1/d) sum_i min(1/2 - u_i, 1/2 + u_i).
double bayes_loss(const ProductBiasDistribution& dist);

std::size_t hamming_count(const Sample& a, const Sample& b);
double hamming_distance(const Sample& a, const Sample& b);
/// hamming_distance(a, b) <= eta, decided exactly.
bool within_ball(const Sample& a, const Sample& b, const Fraction& eta);

/// d(u, u') = ||u - u'||_1 / d, the total variation distance of D_u and D_u'.
double dist_tv(const BiasVector& u, const BiasVector& v);

/// Every (point, label) pair over N points, in Example order.
std::vector<Example> full_alphabet(std::size_t domain_size);

inline constexpr std::uint64_t kDefaultBallCap = 10'000'000;

/// Upper bound sum_{j<=k} C(n, j) |A|^j on the ball size, saturating.
std::uint64_t ball_size_bound(std::size_t n, std::size_t max_corruptions, std::size_t alphabet_size);

/// Visits every member of the Hamming ball with at most max_corruptions
/// rewritten positions, each rewrite drawn from the alphabet. Order: S itself,
/// then by number of rewrites, position sets lexicographically, replacement
/// values in alphabet order. No member is visited twice. The visitor may
/// return false to stop early.
template <class Visitor>
void for_each_in_ball(const Sample& s, std::size_t max_corruptions, std::span<const Example> alphabet,
                      Visitor&& visit, std::uint64_t cap = kDefaultBallCap);

std::vector<Sample> ball_enumerate(const Sample& s, const Fraction& eta, std::span<const Example> alphabet,
                                   std::uint64_t cap = kDefaultBallCap);
std::vector<Sample> ball_enumerate(const Sample& s, std::size_t max_corruptions,
                                   std::span<const Example> alphabet, std::uint64_t cap = kDefaultBallCap);

Example draw_example(const ProductBiasDistribution& dist, RandomSource& rng);
Sample draw_sample(const ProductBiasDistribution& dist, std::size_t n, RandomSource& rng);

namespace detail {
void check_ball_cap(std::size_t n, std::size_t max_corruptions, std::size_t alphabet_size, std::uint64_t cap);
}

template <class Visitor>
void for_each_in_ball(const Sample& s, std::size_t max_corruptions, std::span<const Example> alphabet,
                      Visitor&& visit, std::uint64_t cap) {
  const std::size_t n = s.size();
  const std::size_t k = max_corruptions < n ? max_corruptions : n;
  detail::check_ball_cap(n, k, alphabet.size(), cap);

  std::vector<Example> current(s.begin(), s.end());
  if (!visit(Sample(current))) return;

  // Per-position list of admissible replacements (alphabet minus the original).
  std::vector<std::vector<Example>> choices(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const Example& z : alphabet)
      if (z != s[i]) choices[i].push_back(z);

  std::vector<std::size_t> positions;
  std::vector<std::size_t> digits;
  for (std::size_t j = 1; j <= k; ++j) {
    positions.resize(j);
    for (std::size_t a = 0; a < j; ++a) positions[a] = a;
    while (true) {
      bool empty = false;
      for (std::size_t p : positions) empty = empty || choices[p].empty();
      if (!empty) {
        digits.assign(j, 0);
        while (true) {
          for (std::size_t a = 0; a < j; ++a) current[positions[a]] = choices[positions[a]][digits[a]];
          if (!visit(Sample(current))) return;
          // Odometer, last position varies fastest.
          bool advanced = false;
          for (std::size_t a = j; a-- > 0;) {
            if (++digits[a] < choices[positions[a]].size()) {
              advanced = true;
              break;
            }
            digits[a] = 0;
          }
          if (!advanced) break;
        }
        for (std::size_t p : positions) current[p] = s[p];
      }
      // Next combination of j positions out of n.
      std::size_t a = j;
      while (a > 0 && positions[a - 1] == n - j + (a - 1)) --a;
      if (a == 0) break;
      ++positions[a - 1];
      for (std::size_t b = a; b < j; ++b) positions[b] = positions[b - 1] + 1;
    }
  }
}

}  // namespace poisonlab
