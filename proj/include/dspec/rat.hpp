#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

namespace dspec {

// Exact arbitrary-precision arithmetic. Rat is always stored in lowest terms
// with a positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exponent grids are indexed by integer ticks: exponent = tick / ram.
using Tick = long long;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Largest integer <= q.
Int rat_floor(const Rat& q);

// "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& q);

// Inverse of rat_str: optional sign, integer, optional "/denominator".
// Throws ParseError on malformed text or a zero denominator.
Rat rat_from_text(const std::string& text);

// Exact extraction of an integer Rat into long long; nullopt if non-integral
// or out of range.
std::optional<long long> rat_to_ll(const Rat& q);

// Int -> long long; throws PreconditionError when out of range. Exponent
// ticks and ramification indices must stay in machine range.
long long ll_of_int(const Int& a);

// q^e for integer e (e may be negative if q != 0).
Rat rat_pow(const Rat& q, long long e);

// Exact n-th root of a nonnegative integer, if it is a perfect power.
std::optional<Int> int_nth_root_exact(const Int& a, unsigned n);

// Exact n-th root of a positive rational, if both parts are perfect powers.
std::optional<Rat> rat_nth_root_exact(const Rat& q, unsigned n);

inline long long ll_gcd(long long a, long long b) { return std::gcd(a, b); }
inline long long ll_lcm(long long a, long long b) { return std::lcm(a, b); }

} // namespace dspec
