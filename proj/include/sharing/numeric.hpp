#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sharing {

// All arithmetic in the library is exact. Utility values are arbitrary-size
// integers and every weighted quantity (loss factors, welfare, thresholds)
// is an exact rational, because envy and the decision thresholds are strict
// comparisons that a floating-point epsilon would silently change.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or a bare integer "p". Whitespace is not accepted; q must be
// positive after sign normalization. Throws InputError on malformed text.
Rat parse_rational(const std::string& text);

// Canonical form "p/q" with q > 0 and gcd(p, q) = 1; integers still carry
// the "/1" suffix so round-trips are byte-stable.
std::string format_rational(const Rat& value);

}  // namespace sharing
