#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// boost::rational's mixed comparisons recurse forever under C++20's reversed
// operator candidates, so give the int cases exact non-template overloads.
namespace boost {
#define TIECTL_RATIONAL_EQ(INT)                                                                            \
  inline bool operator==(const rational<std::int64_t>& a, INT b) { return a == rational<std::int64_t>(b); } \
  inline bool operator==(INT b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); } \
  inline bool operator!=(const rational<std::int64_t>& a, INT b) { return !(a == b); }                    \
  inline bool operator!=(INT b, const rational<std::int64_t>& a) { return !(a == b); }
TIECTL_RATIONAL_EQ(int)
TIECTL_RATIONAL_EQ(long)
TIECTL_RATIONAL_EQ(long long)
#undef TIECTL_RATIONAL_EQ
}  // namespace boost

namespace tiectl {

using Rational = boost::rational<std::int64_t>;

/// Parses "p", "p/q" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& r);

}  // namespace tiectl
