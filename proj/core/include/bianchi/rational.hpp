#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace bianchi {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Exact power of 2 dividing a nonzero integer.
inline long two_adic_valuation(const Int& n) {
    if (n == 0) throw std::domain_error("two_adic_valuation: zero has no finite valuation");
    Int m = abs(n);
    return static_cast<long>(boost::multiprecision::lsb(m));
}

// v2(p/q) = v2(p) - v2(q), exact, negative values allowed.
inline long two_adic_valuation(const Rational& q) {
    if (q == 0) throw std::domain_error("two_adic_valuation: zero has no finite valuation");
    return two_adic_valuation(numerator(q)) - two_adic_valuation(denominator(q));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline bool has_odd_denominator(const Rational& q) {
    return boost::multiprecision::bit_test(denominator(q), 0);
}

// Denominator is a power of two (1 counts).
inline bool has_dyadic_denominator(const Rational& q) {
    Int d = denominator(q);
    return (d >> boost::multiprecision::lsb(d)) == 1;
}

}  // namespace bianchi
