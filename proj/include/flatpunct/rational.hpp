#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace flatpunct {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", integers, and decimals with an optional exponent
// ("-0.375", "2.5e-1"). Throws Error{ParseError}.
Rational parse_rational(std::string_view text);

// Exact value of the shortest decimal that round-trips `value`; so 0.3
// becomes 3/10 rather than the binary expansion of the double.
Rational rational_from_double(double value);

double to_double(const Rational& value);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

}  // namespace flatpunct
