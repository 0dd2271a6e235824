#include "pmcover/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace pmc {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    Rational d{boost::multiprecision::mpz_int(den)};
    if (d == 0) return std::nullopt;
    return Rational(boost::multiprecision::mpz_int(num)) / d;
  }
  if (is_integer_token(s)) return Rational(boost::multiprecision::mpz_int(s));

  // Decimal / scientific notation, parsed exactly from the digits.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) --exp10;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      char* end = nullptr;
      long e = std::strtol(s.c_str() + i + 1, &end, 10);
      if (end != s.c_str() + s.size() || end == s.c_str() + i + 1) return std::nullopt;
      exp10 += e;
      i = s.size() - 1;
      break;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  Rational r{boost::multiprecision::mpz_int(digits.empty() ? "0" : digits)};
  Rational ten(10);
  for (long k = 0; k < exp10; ++k) r *= ten;
  for (long k = 0; k > exp10; --k) r /= ten;
  return neg ? -r : r;
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace pmc
