#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace altfix {

// All rate arithmetic is exact: arbitrary-precision integers and rationals.
// Doubles appear only on the geometric/trajectory side of the library.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt floor_rational(const Rational& r);
BigInt ceil_rational(const Rational& r);

// Parses "p", "-p" or "p/q" exactly. Throws std::invalid_argument on
// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const Rational& r);

double to_double(const Rational& r);

// Exact: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// 2^k as an exact integer. Throws std::overflow_error once k exceeds the
// representable-size cap (the bit count of the result).
BigInt pow2(const BigInt& k);

// q^n exactly.
Rational rational_pow(const Rational& q, unsigned long n);

// Largest exponent pow2 will accept. Bounds produced by the rate recursions
// can exceed any fixed binary representation; callers see a clean error
// instead of an allocation failure.
inline constexpr unsigned long kMaxPow2Exponent = 1ul << 28;

}  // namespace altfix
