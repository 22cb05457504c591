#pragma once

#include "bianchi/mat2.hpp"

#include <string>
#include <vector>

namespace bianchi {

// Point of upper half-space in exact coordinates: the boundary-plane
// projection z in Q(sqrt(-2)) and the squared height zeta^2 > 0. Heights are
// stored squared so the isometric action stays inside the rationals.
struct HPoint {
    QuadElement z;
    Rational zeta_sq;

    HPoint() : z(0), zeta_sq(1) {}
    HPoint(QuadElement z_, Rational h2) : z(std::move(z_)), zeta_sq(std::move(h2)) {
        if (zeta_sq <= 0) throw std::invalid_argument("HPoint: zeta^2 must be positive");
    }

    friend bool operator==(const HPoint&, const HPoint&) = default;
};

// Explicit isometric action of det-1 matrices:
//   z'    = ((conj(c z + d))(a z + b) + zeta^2 conj(c) a) / D
//   zeta' = zeta / D,   D = |c z + d|^2 + zeta^2 |c|^2.
HPoint act(const Mat2& g, const HPoint& p);

bool fixes_point(const Mat2& g, const HPoint& p);

enum class EdgeStabilization { No, Fixes, Swaps };
EdgeStabilization stabilizes_edge(const Mat2& g, const HPoint& p, const HPoint& q);

// The eight vertices of the fundamental domain, by name: v1, v1', v1'', v1''',
// v2, v2', v2'', v2'''.
struct NamedVertex {
    std::string name;
    HPoint point;
};
const std::vector<NamedVertex>& fundamental_vertices();
const HPoint& vertex(const std::string& name);

}  // namespace bianchi
