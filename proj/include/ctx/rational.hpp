#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ctx {

using Rational = boost::multiprecision::mpq_rational;

/// Formats as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and "-p/q". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace ctx
