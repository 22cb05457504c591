#include "bianchi/quad.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace bianchi {

QuadElement field_inverse(const QuadElement& x) {
    if (x.is_zero()) throw std::domain_error("field_inverse: zero");
    Rational n = norm(x);
    return conjugate(x) / n;
}

QuadElement divide(const QuadElement& x, const QuadElement& y) {
    return x * field_inverse(y);
}

bool in_subring(const QuadElement& x, SubringTag tag) {
    switch (tag) {
        case SubringTag::ZOmega:
            return is_integer(x.a) && is_integer(x.b);
        case SubringTag::ZOmegaHalf:
            return has_dyadic_denominator(x.a) && has_dyadic_denominator(x.b);
        case SubringTag::DyadicLocal:
            return has_odd_denominator(x.a) && has_odd_denominator(x.b);
    }
    throw std::logic_error("in_subring: bad tag");
}

long dyadic_valuation(const QuadElement& x) {
    if (x.is_zero()) throw std::domain_error("dyadic_valuation: valuation of 0 is +infinity");
    return two_adic_valuation(norm(x));
}

Valuation valuation(const QuadElement& x) {
    if (x.is_zero()) return Valuation::infinity();
    return Valuation::finite(dyadic_valuation(x));
}

bool is_uniformizer(const QuadElement& x) {
    if (x.is_zero()) throw std::invalid_argument("is_uniformizer: zero");
    if (!in_subring(x, SubringTag::DyadicLocal))
        throw std::invalid_argument("is_uniformizer: element not in Z_(2)[w]");
    return dyadic_valuation(x) == 1;
}

namespace {

std::string format_rational(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

// Splits "a+b*w" / "a-b*w" at the sign separating the two terms.
// The w coefficient is everything after that sign up to "*w".
Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace

std::string format(const QuadElement& x) {
    if (x.b == 0) return format_rational(x.a);
    std::string head = format_rational(x.a);
    Rational wb = x.b;
    std::string sep = "+";
    if (wb < 0) {
        sep = "-";
        wb = -wb;
    }
    return head + sep + format_rational(wb) + "*w";
}

QuadElement parse_quad(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_quad: empty input");

    auto star = s.rfind("*w");
    if (star == std::string::npos) {
        if (s == "w") return QuadElement::omega();
        if (s == "-w") return -QuadElement::omega();
        return QuadElement(parse_rational(s), Rational(0));
    }
    std::string body = s.substr(0, star);
    // find the +/- joining the rational part and the w part (not a leading sign,
    // not the sign of an exponent-free rational numerator)
    size_t split = std::string::npos;
    for (size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/' && body[i - 1] != '+' &&
            body[i - 1] != '-')
            split = i;
    }
    if (split == std::string::npos) {
        // pure w-multiple "b*w"
        return QuadElement(Rational(0), parse_rational(body));
    }
    Rational a = parse_rational(body.substr(0, split));
    Rational b = parse_rational(body.substr(split + 1));
    if (body[split] == '-') b = -b;
    return QuadElement(a, b);
}

std::ostream& operator<<(std::ostream& os, const QuadElement& x) { return os << format(x); }

}  // namespace bianchi
