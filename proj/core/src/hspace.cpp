#include "bianchi/hspace.hpp"

#include <stdexcept>

namespace bianchi {

HPoint act(const Mat2& g, const HPoint& p) {
    if (g.det() != QuadElement(1)) throw std::invalid_argument("act: determinant is not 1");
    QuadElement cz_d = g.c * p.z + g.d;
    QuadElement az_b = g.a * p.z + g.b;
    Rational denom = norm(cz_d) + p.zeta_sq * norm(g.c);
    // denom = 0 forces both |cz+d| = 0 and zeta^2 |c|^2 = 0, impossible at
    // positive height for an invertible matrix
    QuadElement znum = conjugate(cz_d) * az_b + conjugate(g.c) * g.a * p.zeta_sq;
    return HPoint(znum / denom, p.zeta_sq / (denom * denom));
}

bool fixes_point(const Mat2& g, const HPoint& p) { return act(g, p) == p; }

EdgeStabilization stabilizes_edge(const Mat2& g, const HPoint& p, const HPoint& q) {
    HPoint gp = act(g, p);
    HPoint gq = act(g, q);
    if (gp == p && gq == q) return EdgeStabilization::Fixes;
    if (gp == q && gq == p) return EdgeStabilization::Swaps;
    return EdgeStabilization::No;
}

const std::vector<NamedVertex>& fundamental_vertices() {
    auto mk = [](long an, long ad, long bn, long bd, long hn, long hd) {
        return HPoint(QuadElement(Rational(an, ad), Rational(bn, bd)), Rational(hn, hd));
    };
    static const std::vector<NamedVertex> table = {
        {"v1", mk(-1, 2, -1, 2, 1, 4)},   {"v1'", mk(1, 2, -1, 2, 1, 4)},
        {"v1''", mk(1, 2, 1, 2, 1, 4)},   {"v1'''", mk(-1, 2, 1, 2, 1, 4)},
        {"v2", mk(-1, 2, -1, 4, 1, 8)},   {"v2'", mk(0, 1, -1, 2, 1, 2)},
        {"v2''", mk(0, 1, 1, 2, 1, 2)},   {"v2'''", mk(-1, 2, 1, 4, 1, 8)},
    };
    return table;
}

const HPoint& vertex(const std::string& name) {
    for (const auto& v : fundamental_vertices())
        if (v.name == name) return v.point;
    throw std::invalid_argument("vertex: unknown name " + name);
}

}  // namespace bianchi
