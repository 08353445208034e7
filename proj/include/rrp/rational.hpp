#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rrp {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Accepts "p/q" or "p" with decimal digits and an optional leading '-'.
// Throws ParseError on anything else, including q = 0.
Rational parse_rational(std::string_view text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

// Approximate decimal rendering with the given number of fractional digits.
std::string format_decimal(const Rational& value, int digits = 6);

// Smallest integer strictly greater than value.
Integer floor_plus_one(const Rational& value);

// A natural-number bound that may be infinite (sigma, delta, lambda).
class Bound {
 public:
  Bound() = default;  // infinite
  explicit Bound(std::uint64_t value) : value_(value) {}

  static Bound infinite() { return Bound(); }

  bool is_finite() const { return value_.has_value(); }
  std::uint64_t value() const { return *value_; }
  bool allows(std::uint64_t count) const { return !value_ || count <= *value_; }

  // Pointwise order with infinity on top.
  bool operator<=(const Bound& other) const {
    if (!other.value_) return true;
    return value_ && *value_ <= *other.value_;
  }
  bool operator==(const Bound& other) const = default;

  std::string to_string() const;
  static Bound parse(std::string_view text);

 private:
  std::optional<std::uint64_t> value_;
};

}  // namespace rrp
