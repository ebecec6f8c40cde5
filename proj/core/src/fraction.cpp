#include "poisonlab/fraction.hpp"

#include <charconv>
#include <numeric>

#include "poisonlab/errors.hpp"

namespace poisonlab {
namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
    throw std::overflow_error("fraction component overflows int64");
  return static_cast<std::int64_t>(v);
}

Fraction reduced(Wide num, Wide den) {
  if (den == 0) throw PreconditionError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Fraction(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw PreconditionError("not a number: '" + std::string(whole) + "'");
  return value;
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw PreconditionError("fraction with zero denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Fraction Fraction::parse(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  if (t.empty()) throw PreconditionError("empty number");

  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    std::int64_t p = parse_int(t.substr(0, slash), text);
    std::int64_t q = parse_int(t.substr(slash + 1), text);
    return Fraction(p, q);
  }
  if (t.find_first_of("eE") != std::string_view::npos)
    throw PreconditionError("exponent notation not accepted: '" + std::string(text) + "'");

  bool negative = false;
  if (t.front() == '-' || t.front() == '+') {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  auto dot = t.find('.');
  std::string_view int_part = t.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : t.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw PreconditionError("not a number: '" + std::string(text) + "'");
  if (frac_part.size() > 18) throw PreconditionError("too many decimals: '" + std::string(text) + "'");

  Wide num = int_part.empty() ? 0 : parse_int(int_part, text);
  Wide den = 1;
  if (!frac_part.empty()) {
    std::int64_t digits = parse_int(frac_part, text);
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    num = num * den + digits;
  }
  if (negative) num = -num;
  return reduced(num, den);
}

std::int64_t Fraction::floor_times(std::int64_t n) const {
  return narrow(floor_div(static_cast<Wide>(num_) * n, den_));
}

std::int64_t Fraction::ceil_times(std::int64_t n) const {
  return narrow(-floor_div(-static_cast<Wide>(num_) * n, den_));
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return reduced(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, std::int64_t k) {
  return reduced(static_cast<Wide>(a.num_), static_cast<Wide>(a.den_) * k);
}

}  // namespace poisonlab
