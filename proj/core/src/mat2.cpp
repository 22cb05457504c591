#include "bianchi/mat2.hpp"

#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace bianchi {

bool Mat2::has_integral_entries() const {
    return in_subring(a, SubringTag::ZOmega) && in_subring(b, SubringTag::ZOmega) &&
           in_subring(c, SubringTag::ZOmega) && in_subring(d, SubringTag::ZOmega);
}

Mat2 multiply(const Mat2& m, const Mat2& n) {
    return Mat2(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

Mat2 operator*(const Mat2& m, const Mat2& n) { return multiply(m, n); }

Mat2 operator-(const Mat2& m) { return Mat2(-m.a, -m.b, -m.c, -m.d); }

Mat2 inverse(const Mat2& m) {
    if (m.det() != QuadElement(1))
        throw std::invalid_argument("inverse: determinant is not 1");
    return Mat2(m.d, -m.b, -m.c, m.a);
}

Mat2 power(const Mat2& m, long k) {
    if (k < 0) return power(inverse(m), -k);
    Mat2 acc;
    Mat2 base = m;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Mat2 conjugate_by(const Mat2& g, const Mat2& x) { return x * g * inverse(x); }

std::string format(const Mat2& m) {
    std::ostringstream os;
    os << "[[" << format(m.a) << "," << format(m.b) << "],[" << format(m.c) << ","
       << format(m.d) << "]]";
    return os.str();
}

Mat2 parse_mat2(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 8 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
        throw std::invalid_argument("parse_mat2: expected [[a,b],[c,d]]");
    std::string inner = s.substr(2, s.size() - 4);
    auto mid = inner.find("],[");
    if (mid == std::string::npos) throw std::invalid_argument("parse_mat2: missing row split");
    auto split_row = [](const std::string& row) {
        // entries contain no brackets; the comma splitting them is the only
        // top-level comma
        auto comma = row.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_mat2: missing entry split");
        return std::pair<std::string, std::string>(row.substr(0, comma), row.substr(comma + 1));
    };
    auto [a, b] = split_row(inner.substr(0, mid));
    auto [c, d] = split_row(inner.substr(mid + 3));
    return Mat2(parse_quad(a), parse_quad(b), parse_quad(c), parse_quad(d));
}

namespace {
QuadElement w() { return QuadElement::omega(); }
QuadElement q(long n) { return QuadElement(n); }
}  // namespace

Mat2 gen_A() { return Mat2(q(1), w(), w(), q(-1)); }
Mat2 gen_B() { return Mat2(q(-1) - w(), -w(), q(2), q(1) + w()); }
Mat2 gen_C() { return Mat2(q(-1), q(-1), q(2), q(1)); }
Mat2 gen_b() { return Mat2(q(1), q(-1), q(1), q(0)); }
Mat2 gen_c() { return Mat2(q(0), q(-1), q(1), q(0)); }
Mat2 gen_h() { return Mat2(q(1), q(0), q(1), q(1)); }
Mat2 gen_T() { return Mat2(q(1), q(1), q(0), q(1)); }
Mat2 gen_U() { return Mat2(q(1), q(0), -w(), q(1)); }
Mat2 minus_identity() { return Mat2(q(-1), q(0), q(0), q(-1)); }

const std::vector<NamedGenerator>& named_generators() {
    static const std::vector<NamedGenerator> table = {
        {"A", gen_A()}, {"B", gen_B()}, {"C", gen_C()}, {"b", gen_b()},
        {"c", gen_c()}, {"h", gen_h()}, {"T", gen_T()}, {"U", gen_U()},
    };
    return table;
}

std::optional<int> element_order(const Mat2& m, int cap) {
    if (cap < 1) throw std::invalid_argument("element_order: cap must be >= 1");
    if (m.det() != QuadElement(1))
        throw std::invalid_argument("element_order: determinant is not 1");
    Mat2 acc = m;
    for (int k = 1; k <= cap; ++k) {
        if (acc == Mat2::identity()) return k;
        acc = acc * m;
    }
    return std::nullopt;
}

bool in_gamma0(const Mat2& m) {
    if (!m.has_integral_entries())
        throw std::invalid_argument("in_gamma0: entries must lie in Z[w]");
    if (m.det() != QuadElement(1)) throw std::invalid_argument("in_gamma0: det must be 1");
    if (m.c.is_zero()) return true;
    bool by_norm = !boost::multiprecision::bit_test(numerator(norm(m.c)), 0);
    bool by_quotient = in_subring(divide(m.c, w()), SubringTag::ZOmega);
    if (by_norm != by_quotient)
        throw std::logic_error("in_gamma0: norm-parity and w-divisibility tests disagree");
    return by_norm;
}

Mat2 inject_second_factor(const Mat2& m) {
    if (!in_gamma0(m))
        throw std::invalid_argument("inject_second_factor: matrix is not in Gamma_0(w)");
    return Mat2(m.d, divide(m.c, w()), m.b * w(), m.a);
}

Mat2 inject_second_factor_swapped(const Mat2& m) {
    if (!in_gamma0(m))
        throw std::invalid_argument("inject_second_factor_swapped: matrix is not in Gamma_0(w)");
    return Mat2(m.a, m.b * w(), divide(m.c, w()), m.d);
}

Mat2 basis_swap_conjugate(const Mat2& m) { return Mat2(m.d, m.c, m.b, m.a); }

bool verify_conjugacy(const Mat2& g, const Mat2& target, const Mat2& conjugator) {
    if (g.det() != QuadElement(1) || target.det() != QuadElement(1) ||
        conjugator.det() != QuadElement(1))
        throw std::invalid_argument("verify_conjugacy: all determinants must be 1");
    return conjugator * g * inverse(conjugator) == target;
}

bool Closure::contains(const Mat2& m) const { return index_of(m) >= 0; }

int Closure::index_of(const Mat2& m) const {
    auto it = index.find(format(m));
    return it == index.end() ? -1 : it->second;
}

Closure closure(const std::vector<Mat2>& generators, int cap) {
    Closure cl;
    auto push = [&cl](const Mat2& m, std::vector<int> word) {
        cl.index.emplace(format(m), cl.size());
        cl.elements.push_back(m);
        cl.words.push_back(std::move(word));
    };
    push(Mat2::identity(), {});
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int at = todo.front();
        todo.pop_front();
        for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi) {
            Mat2 next = cl.elements[at] * generators[gi];
            if (next.det() != QuadElement(1))
                throw std::invalid_argument("closure: generators must have det 1");
            if (cl.contains(next)) continue;
            if (cl.size() >= cap)
                throw std::runtime_error("closure: cap exceeded, group not verified finite");
            std::vector<int> word = cl.words[at];
            word.push_back(gi);
            push(next, std::move(word));
            todo.push_back(cl.size() - 1);
        }
    }
    return cl;
}

bool is_quaternion_group(const Mat2& x, const Mat2& y) {
    Closure cl = closure({x, y}, 64);
    if (cl.size() != 8) return false;
    Mat2 x2 = x * x;
    if (x2 == Mat2::identity()) return false;
    if (power(x, 4) != Mat2::identity()) return false;
    if (x2 != y * y) return false;
    return y * x * inverse(y) == power(x, 3);
}

std::optional<BinaryTetrahedralWitness> binary_tetrahedral_witness(const Closure& cl) {
    if (cl.size() != 24) return std::nullopt;
    for (const Mat2& s : cl.elements) {
        Mat2 s3 = power(s, 3);
        if (s3 == Mat2::identity() || s3 * s3 != Mat2::identity()) continue;
        for (const Mat2& t : cl.elements) {
            if (power(t, 3) != s3) continue;
            Mat2 st = s * t;
            if (st * st != s3) continue;
            if (closure({s, t}, 64).size() != 24) continue;
            return BinaryTetrahedralWitness{s, t};
        }
    }
    return std::nullopt;
}

}  // namespace bianchi
