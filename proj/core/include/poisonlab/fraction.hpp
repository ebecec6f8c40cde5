#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace poisonlab {

/// Exact nonnegative-denominator rational, always stored in lowest terms.
///
/// Budgets are carried as fractions so that quantities such as floor(eta * n)
/// and grids of multiples of eta are computed without floating-point drift.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den);
  static Fraction from_integer(std::int64_t value) { return {value, 1}; }

  /// Accepts "p/q", integers and plain decimals ("0.015625" is 1/64 exactly).
  static Fraction parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(this * n), exact.
  std::int64_t floor_times(std::int64_t n) const;
  /// ceil(this * n), exact.
  std::int64_t ceil_times(std::int64_t n) const;

  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, std::int64_t k) { return a * Fraction(k, 1); }
  friend Fraction operator/(const Fraction& a, std::int64_t k);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace poisonlab
