#include "rrp/rational.hpp"

#include <cctype>

#include "rrp/errors.hpp"

namespace rrp {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  }
  Integer p{std::string(num)};
  Integer q{std::string(den)};
  if (q == 0) throw ParseError("malformed rational \"" + std::string(text) + "\": zero denominator");
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  const Integer& p = numerator(value);
  const Integer& q = denominator(value);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

std::string format_decimal(const Rational& value, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = value * scale;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  // Round half up on the magnitude.
  Integer n = numerator(scaled);
  Integer d = denominator(scaled);
  Integer rounded = (2 * n + d) / (2 * d);
  std::string digits_str = rounded.str();
  if (digits > 0) {
    if (static_cast<int>(digits_str.size()) <= digits) {
      digits_str.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(digits_str.size())), '0');
    }
    digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) digits_str.insert(0, "-");
  return digits_str;
}

Integer floor_plus_one(const Rational& value) {
  Integer n = numerator(value);
  Integer d = denominator(value);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q + 1;
}

std::string Bound::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

Bound Bound::parse(std::string_view text) {
  if (text == "inf") return Bound::infinite();
  if (!all_digits(text)) throw ParseError("malformed bound \"" + std::string(text) + "\"");
  return Bound(std::stoull(std::string(text)));
}

}  // namespace rrp
