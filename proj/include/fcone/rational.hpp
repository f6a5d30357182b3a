#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

#include <fcone/errors.hpp>

namespace fcone {

// exact rational scalar used everywhere; GMP keeps values reduced with a
// positive denominator and zero canonicalized to 0/1.
using Rational = boost::multiprecision::mpq_rational;

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

// parses "p", "-p", "p/q" with q > 0 after sign normalization.
// rejects anything else (whitespace, hex, empty denominators, q = 0).
Rational parse_rational(const std::string& text);

// canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rational_str(const Rational& value);

Rational rational_abs(const Rational& value);

// true when a nonnegative value is the square of a rational, which is then
// stored in root; used for exact euclidean distances.
bool exact_sqrt(const Rational& value, Rational& root);

}  // namespace fcone
