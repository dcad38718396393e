// Exact rational arithmetic used for every payoff, price, and probability.
// Values cross the file boundary as "num/den" strings so no precision is
// lost between a config, a computation, and a report.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace oraclesim {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "num/den", "num", or a decimal string like "-0.35" (exact: 35/100).
// Throws ConfigError on malformed input or zero denominator.
Rat rat_from_string(const std::string& text);

// Canonical form: "num/den", or just "num" when the denominator is 1.
std::string rat_to_string(const Rat& value);

// True when value is an integer (denominator 1).
bool rat_is_integer(const Rat& value);

// Floor of an exact rational, as a big integer.
BigInt rat_floor(const Rat& value);

// Convenience for tests and tables; lossy, never used in comparisons.
double rat_to_double(const Rat& value);

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) {
    return Rat(BigInt(num), BigInt(den));
}

}  // namespace oraclesim
