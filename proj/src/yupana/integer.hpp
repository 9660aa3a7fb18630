#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace yupana {

// Board values are exact at any size: token counts are unbounded and rows
// may exceed what fits in a machine word.
using Integer = boost::multiprecision::cpp_int;

// 10^exponent, exponent >= 0. Small exponents come from a table.
const Integer& pow10(int exponent);

// Parses an optionally signed decimal literal. Throws ParseError.
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& value);

// Number of decimal digits of a non-negative value (0 has one digit).
int decimal_digits(const Integer& value);

}  // namespace yupana
