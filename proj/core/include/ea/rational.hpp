#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Mixed-type equality without the recursive C++20 rewrite.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace ea {

using Rational = boost::rational<std::int64_t>;

// Accepts "m/n", "m" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace ea
