#pragma once

#include "bianchi/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace bianchi {

// Element a + b*w of Q(sqrt(-2)), w^2 = -2, with exact rational coordinates.
struct QuadElement {
    Rational a;  // coefficient of 1
    Rational b;  // coefficient of w

    QuadElement() = default;
    QuadElement(Rational re, Rational wc) : a(std::move(re)), b(std::move(wc)) {}
    QuadElement(long re) : a(re), b(0) {}

    static QuadElement omega() { return QuadElement(Rational(0), Rational(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const QuadElement&, const QuadElement&) = default;

    QuadElement operator+(const QuadElement& o) const { return {a + o.a, b + o.b}; }
    QuadElement operator-(const QuadElement& o) const { return {a - o.a, b - o.b}; }
    QuadElement operator-() const { return {-a, -b}; }
    QuadElement operator*(const QuadElement& o) const {
        // (a + bw)(c + dw) = ac - 2bd + (ad + bc) w
        return {a * o.a - 2 * b * o.b, a * o.b + b * o.a};
    }
    QuadElement operator*(const Rational& r) const { return {a * r, b * r}; }
    QuadElement operator/(const Rational& r) const { return {a / r, b / r}; }
};

inline QuadElement conjugate(const QuadElement& x) { return {x.a, -x.b}; }

// N(a + bw) = a^2 + 2 b^2; multiplicative.
inline Rational norm(const QuadElement& x) { return x.a * x.a + 2 * x.b * x.b; }

// Exact inverse in the field, x != 0.
QuadElement field_inverse(const QuadElement& x);
QuadElement divide(const QuadElement& x, const QuadElement& y);

enum class SubringTag {
    ZOmega,       // Z[w]
    ZOmegaHalf,   // Z[w][1/2]
    DyadicLocal,  // Z_(2)[w]
};

bool in_subring(const QuadElement& x, SubringTag tag);

// Valuation value with the +infinity sentinel kept apart from integers.
class Valuation {
  public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw std::domain_error("Valuation: +infinity has no integer value");
        return value_;
    }

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend bool operator<(const Valuation& l, const Valuation& r) {
        if (l.infinite_) return false;
        if (r.infinite_) return true;
        return l.value_ < r.value_;
    }
    friend Valuation operator+(const Valuation& l, const Valuation& r) {
        if (l.infinite_ || r.infinite_) return infinity();
        return finite(l.value_ + r.value_);
    }
    friend Valuation min(const Valuation& l, const Valuation& r) { return l < r ? l : r; }

  private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

// v2(N(x)) for x != 0; throws on zero input.
long dyadic_valuation(const QuadElement& x);

// Total version mapping 0 to the infinity sentinel.
Valuation valuation(const QuadElement& x);

// True iff dyadic_valuation(x) == 1. Requires x != 0 and x in Z_(2)[w].
bool is_uniformizer(const QuadElement& x);

// Textual form "a+b*w" with rationals "p/q"; pure rationals print bare.
std::string format(const QuadElement& x);
QuadElement parse_quad(const std::string& text);

std::ostream& operator<<(std::ostream& os, const QuadElement& x);

}  // namespace bianchi
