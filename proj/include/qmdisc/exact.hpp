#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qmdisc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p/q" or "p" for integers.
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or a finite decimal such as "-0.125" exactly.
Rational parse_rational(const std::string& text);

}  // namespace qmdisc
