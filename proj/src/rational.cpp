#include "flatpunct/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "flatpunct/errors.hpp"

namespace flatpunct {

namespace {

using boost::multiprecision::cpp_int;

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError,
              "not a rational number: '" + std::string(text) + "'");
}

cpp_int pow10(long exponent) {
  cpp_int result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int digits = 0;
  long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      any_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad(text);
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') bad(text);
    ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) bad(text);
    // Keeps pow10 bounded; no metric needs more range than this.
    if (exponent > 400 || exponent < -400) bad(text);
  }
  exponent -= scale;
  Rational value = exponent >= 0 ? Rational(digits * pow10(exponent))
                                 : Rational(digits, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) {
    throw Error(ErrorCode::ParseError,
                "zero denominator in '" + std::string(text) + "'");
  }
  return num / den;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "non-finite number");
  }
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error(ErrorCode::ParseError, "to_chars failed");
  return parse_decimal(std::string_view(buffer, ptr - buffer));
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace flatpunct
