#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "talbot/dd.hpp"

namespace talbot {

/// Reduced fraction u/q with 0 <= u <= q, q >= 1, gcd(u, q) = 1.
/// Represents a rational time in [0, 1].
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t u, std::int64_t q) : num(u), den(q) {
    if (den <= 0) throw std::invalid_argument("Fraction: denominator must be positive");
    if (num < 0) throw std::invalid_argument("Fraction: negative numerator");
    std::int64_t g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  DD value_dd() const { return DD(static_cast<double>(num)) / DD(static_cast<double>(den)); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// Parses "u/q" or a plain integer "u" (meaning u/1); trailing characters
  /// are an error, so decimals like "0.5" are rejected rather than truncated.
  static Fraction parse(const std::string& text) {
    auto parse_int = [&text](const std::string& part) {
      std::size_t pos = 0;
      std::int64_t v;
      try {
        v = std::stoll(part, &pos);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Fraction: cannot parse '" + text + "'");
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("Fraction: value out of range in '" + text + "'");
      }
      if (pos != part.size())
        throw std::invalid_argument("Fraction: cannot parse '" + text + "'");
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Fraction(parse_int(text), 1);
    return Fraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
};

}  // namespace talbot
