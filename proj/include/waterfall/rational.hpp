// rational.hpp — exact rational scalar: parsing, formatting, conversion.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "waterfall/errors.hpp"

namespace waterfall {

/// Exact signed rational, always held in canonical form (gcd-reduced,
/// positive denominator). Plain value semantics: arithmetic is closed and
/// comparison is total and exact.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

/// Parse a number token. Accepted forms:
///   integers        "42"  "-3"  "+7"
///   fractions       "3/7" "-22/7"   (zero denominator rejected)
///   decimals        "0.25" "-12.5" "1e-12" "2.5e3"
/// Anything else throws NumberFormatError carrying the 0-based offset of the
/// first offending character ("3//7" fails at offset 2).
Rational parse_rational(std::string_view token);

/// Canonical text form: "p" when the denominator is 1, else "p/q" with q > 0.
/// parse_rational(format_rational(r)) == r.
std::string format_rational(const Rational& r);

/// Nearest double. Large values saturate to +/-inf like any double conversion.
double to_double(const Rational& r);

/// Shortest round-trip decimal form of a double ("0.1", "1e+20", ...).
std::string format_double(double v);

// Uniform scalar formatting for the two numeric modes.
inline std::string scalar_text(const Rational& r) { return format_rational(r); }
inline std::string scalar_text(double v) { return format_double(v); }

}  // namespace waterfall
