#pragma once

#include "bianchi/quad.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bianchi {

// 2x2 matrix over Q(sqrt(-2)), row-major. Group elements require det = 1.
struct Mat2 {
    QuadElement a, b, c, d;

    Mat2() : a(1), b(0), c(0), d(1) {}
    Mat2(QuadElement a_, QuadElement b_, QuadElement c_, QuadElement d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return Mat2(); }

    friend bool operator==(const Mat2&, const Mat2&) = default;

    QuadElement det() const { return a * d - b * c; }
    QuadElement trace() const { return a + d; }
    bool has_integral_entries() const;
};

Mat2 multiply(const Mat2& m, const Mat2& n);
Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 operator-(const Mat2& m);

// Inverse via the adjugate; requires det = 1.
Mat2 inverse(const Mat2& m);
Mat2 power(const Mat2& m, long k);
Mat2 conjugate_by(const Mat2& g, const Mat2& x);  // x g x^{-1}

std::string format(const Mat2& m);  // "[[a,b],[c,d]]"
Mat2 parse_mat2(const std::string& text);

// Named generators, entries fixed by the geometry of the fundamental domain.
Mat2 gen_A();  // [[1,w],[w,-1]]        order 4
Mat2 gen_B();  // [[-1-w,-w],[2,1+w]]   order 4
Mat2 gen_C();  // [[-1,-1],[2,1]]       order 4
Mat2 gen_b();  // [[1,-1],[1,0]]        order 6
Mat2 gen_c();  // [[0,-1],[1,0]]        order 4
Mat2 gen_h();  // [[1,0],[1,1]]
Mat2 gen_T();  // [[1,1],[0,1]]
Mat2 gen_U();  // [[1,0],[-w,1]]
Mat2 minus_identity();

struct NamedGenerator {
    std::string name;
    Mat2 value;
};
const std::vector<NamedGenerator>& named_generators();

// Least k <= cap with m^k = I, or nullopt ("exceeds cap").
std::optional<int> element_order(const Mat2& m, int cap = 64);

// Congruence test: entries in Z[w], det 1, lower-left entry in the ideal (w).
// Decided by norm parity of c and cross-checked against c/w integrality.
bool in_gamma0(const Mat2& m);

// Second-factor injection of the amalgam as printed with the uniformizer w:
//   [[a,b],[c,d]] -> [[d, c/w],[b*w, a]]
// Equals conjugation by [[0,1],[w,0]]. Requires membership in Gamma_0(w).
Mat2 inject_second_factor(const Mat2& m);

// Classical (unswapped) form [[a, b*w],[c/w, d]]; differs from
// inject_second_factor by conjugation with the basis swap [[0,1],[1,0]].
// The explicit conjugacy identities of the stabilizer correspondence hold
// verbatim for this form.
Mat2 inject_second_factor_swapped(const Mat2& m);

// J m J with J = [[0,1],[1,0]] (reverse rows and columns).
Mat2 basis_swap_conjugate(const Mat2& m);

// True iff conjugator * g * conjugator^{-1} == target exactly.
bool verify_conjugacy(const Mat2& g, const Mat2& target, const Mat2& conjugator);

// Exhaustive closure under multiplication, capped. Tracks one generator word
// per element (indices into the generator list, BFS order, deterministic).
struct Closure {
    std::vector<Mat2> elements;
    std::vector<std::vector<int>> words;
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(elements.size()); }
    bool contains(const Mat2& m) const;
    int index_of(const Mat2& m) const;  // -1 if absent
};

Closure closure(const std::vector<Mat2>& generators, int cap = 10000);

// Q8 recognition: order 8 with x^4 = 1, x^2 = y^2, y x y^{-1} = x^{-1}.
bool is_quaternion_group(const Mat2& x, const Mat2& y);

// Binary tetrahedral recognition: order 24 and some pair (s,t) in the closure
// satisfies s^3 = t^3 = (st)^2 with that element central of order 2.
struct BinaryTetrahedralWitness {
    Mat2 s, t;
};
std::optional<BinaryTetrahedralWitness> binary_tetrahedral_witness(const Closure& cl);

}  // namespace bianchi
