#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coorbitsym {

// Arbitrary precision rational. mpq_class keeps the value canonical
// (positive denominator, reduced) after every arithmetic operation.
using Rational = mpq_class;

// Parses "p/q", "p", or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// p/q in lowest terms. mpq_class(p, q) alone does not reduce.
Rational make_rational(long p, long q);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace coorbitsym
