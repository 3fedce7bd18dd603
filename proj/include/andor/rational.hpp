#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace andor {

// All probabilities and expected costs are exact rationals; no floating
// point is used anywhere in the library.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
Rational make_rational(Integer num, Integer den);

// Prints "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "a/b", a bare integer, or a decimal literal such as "0.25"
// (converted exactly). Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace andor
