#pragma once

#include <gmpxx.h>

#include <string>

#include "mixfrac/errors.hpp"

namespace mixfrac {

using Rational = mpq_class;

/// Parse "3", "-3", or "4/3" into a canonical rational. Rejects anything else
/// (decimals, whitespace, zero denominators) with ParseError.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q" with q > 1, plain integer otherwise.
std::string format_rational(const Rational& v);

inline double to_double(const Rational& v) { return v.get_d(); }

} // namespace mixfrac
