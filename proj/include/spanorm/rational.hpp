#pragma once

#include <gmpxx.h>

#include <string>

namespace spanorm {

using Rational = mpq_class;

// Accepts integers, fractions "a/b" and finite decimals "1.25" / "-0.5e-3".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace spanorm
