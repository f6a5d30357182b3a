#include "fcone/rational.hpp"

#include <cctype>

#include "fcone/errors.hpp"

namespace fcone {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    const std::string den = slash == std::string::npos ? std::string("1") : text.substr(slash + 1);

    std::size_t num_start = 0;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) num_start = 1;
    if (!all_digits(num, num_start, num.size()))
        throw ParseError("not a rational: '" + text + "'");
    if (!all_digits(den, 0, den.size()))
        throw ParseError("not a rational: '" + text + "'");

    boost::multiprecision::mpz_int p(num);
    boost::multiprecision::mpz_int q(den);
    if (q == 0) throw ParseError("zero denominator: '" + text + "'");
    return Rational(p) / Rational(q);
}

std::string rational_str(const Rational& value) {
    return value.str();
}

Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

bool exact_sqrt(const Rational& value, Rational& root) {
    if (value < 0) return false;
    const boost::multiprecision::mpz_int num = boost::multiprecision::numerator(value);
    const boost::multiprecision::mpz_int den = boost::multiprecision::denominator(value);
    const boost::multiprecision::mpz_int rn = boost::multiprecision::sqrt(num);
    const boost::multiprecision::mpz_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return false;
    root = Rational(rn) / Rational(rd);
    return true;
}

}  // namespace fcone
