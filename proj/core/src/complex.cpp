#include "bianchi/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bianchi {

namespace {

[[noreturn]] void audit_fail(const std::string& what) {
    throw std::logic_error("complex audit: " + what);
}

}  // namespace

int StabilizerLabel::expected_order() const {
    switch (kind) {
        case StabKind::Trivial: return 1;
        case StabKind::Center: return 2;
        case StabKind::Z4: return 4;
        case StabKind::Z6: return 6;
        case StabKind::Q8: return 8;
        case StabKind::Te24: return 24;
    }
    return -1;
}

StabilizerLabel center_label() {
    return StabilizerLabel{StabKind::Center, "<-I>", {"-I"}, {minus_identity()}};
}

StabilizerLabel trivial_label() { return StabilizerLabel{StabKind::Trivial, "<1>", {}, {}}; }

namespace {

StabilizerLabel z4_label(const std::string& gname, const Mat2& g) {
    return StabilizerLabel{StabKind::Z4, "<" + gname + ">", {gname}, {g}};
}

StabilizerLabel z6_label(const std::string& gname, const Mat2& g) {
    return StabilizerLabel{StabKind::Z6, "<" + gname + ">", {gname}, {g}};
}

StabilizerLabel q8_label(const std::string& n1, const Mat2& g1, const std::string& n2,
                         const Mat2& g2) {
    return StabilizerLabel{StabKind::Q8, "<" + n1 + "," + n2 + ">", {n1, n2}, {g1, g2}};
}

StabilizerLabel te24_label(const std::string& n1, const Mat2& g1, const std::string& n2,
                           const Mat2& g2) {
    return StabilizerLabel{StabKind::Te24, "<" + n1 + "," + n2 + ">", {n1, n2}, {g1, g2}};
}

void audit_label(const EquivariantComplex& cx, const StabilizerLabel& label,
                 const std::vector<HPoint>& cell_points, const std::string& cell_name) {
    if (label.kind == StabKind::Trivial) return;
    for (const Mat2& g : label.gens) {
        if (g.det() != QuadElement(1)) audit_fail(cell_name + ": stabilizer generator det != 1");
        if (cx.geometric && !g.has_integral_entries())
            audit_fail(cell_name + ": stabilizer generator outside Z[w]");
        if (cx.tag == GroupTag::Gamma0 && !in_gamma0(g))
            audit_fail(cell_name + ": stabilizer generator outside Gamma_0");
        if (cx.geometric) {
            if (cell_points.size() == 1 && !fixes_point(g, cell_points[0]))
                audit_fail(cell_name + ": generator does not fix the vertex");
            if (cell_points.size() == 2 &&
                stabilizes_edge(g, cell_points[0], cell_points[1]) != EdgeStabilization::Fixes)
                audit_fail(cell_name + ": generator does not fix the edge pointwise");
        }
    }
    Closure cl = closure(label.gens, 64);
    if (cl.size() != label.expected_order())
        audit_fail(cell_name + ": stabilizer closure has order " + std::to_string(cl.size()) +
                   ", expected " + std::to_string(label.expected_order()));
    if (label.kind == StabKind::Q8 && !is_quaternion_group(label.gens[0], label.gens[1]))
        audit_fail(cell_name + ": Q8 relations fail");
    if (label.kind == StabKind::Te24 && !binary_tetrahedral_witness(cl))
        audit_fail(cell_name + ": binary tetrahedral witness not found");
}

void audit_complex(const EquivariantComplex& cx) {
    for (const auto& f : cx.faces) {
        // boundary chains
        for (size_t k = 0; k < f.boundary.size(); ++k) {
            auto [e0, s0] = f.boundary[k];
            auto [e1, s1] = f.boundary[(k + 1) % f.boundary.size()];
            int end0 = s0 > 0 ? cx.edges[e0].v1 : cx.edges[e0].v0;
            int start1 = s1 > 0 ? cx.edges[e1].v0 : cx.edges[e1].v1;
            if (end0 != start1) audit_fail(f.name + ": boundary walk does not chain");
        }
    }
    if (!cx.geometric) return;
    for (const auto& v : cx.vertices) audit_label(cx, v.label, {v.point}, v.name);
    for (const auto& e : cx.edges)
        audit_label(cx, e.label, {cx.vertices[e.v0].point, cx.vertices[e.v1].point}, e.name);
    for (const auto& f : cx.faces) audit_label(cx, f.label, {}, f.name);
    for (const auto& id : cx.idents) {
        if (id.dim != 1) continue;
        const EdgeCell& s = cx.edges[id.source];
        const EdgeCell& t = cx.edges[id.target];
        if (cx.tag == GroupTag::Gamma0 && !in_gamma0(id.g))
            audit_fail("identification element outside Gamma_0");
        HPoint a = act(id.g, cx.vertices[s.v0].point);
        HPoint b = act(id.g, cx.vertices[s.v1].point);
        bool direct = a == cx.vertices[t.v0].point && b == cx.vertices[t.v1].point;
        bool flipped = a == cx.vertices[t.v1].point && b == cx.vertices[t.v0].point;
        if (!direct && !flipped)
            audit_fail("identification does not carry " + s.name + " onto " + t.name);
    }
}

}  // namespace

namespace {

// Non-representative cells carry the transported copies of their orbit
// representative's stabilizer: label(cell) = q L q^{-1} for cell = q * rep.
void propagate_labels(EquivariantComplex& cx) {
    QuotientStructure qs = build_quotient(cx);
    auto transported = [](const StabilizerLabel& L, const Mat2& q) {
        StabilizerLabel out = L;
        out.name = L.name + "'";
        for (size_t k = 0; k < L.gens.size(); ++k) {
            out.gens[k] = q * L.gens[k] * inverse(q);
            out.gen_names[k] = L.gen_names[k] + "'";
        }
        return out;
    };
    for (size_t i = 0; i < cx.vertices.size(); ++i) {
        int rep = qs.vrep[qs.vorbit[i]];
        if (static_cast<int>(i) != rep)
            cx.vertices[i].label = transported(cx.vertices[rep].label, qs.vtransport[i]);
    }
    for (size_t i = 0; i < cx.edges.size(); ++i) {
        int rep = qs.erep[qs.eorbit[i]];
        if (static_cast<int>(i) != rep)
            cx.edges[i].label = transported(cx.edges[rep].label, qs.etransport[i]);
    }
}

}  // namespace

EquivariantComplex build_gamma0_complex() {
    EquivariantComplex cx;
    cx.tag = GroupTag::Gamma0;

    Mat2 A = gen_A(), B = gen_B(), C = gen_C(), T = gen_T(), U = gen_U();

    auto V = [&cx](const std::string& name, StabilizerLabel label) {
        cx.vertices.push_back({name, vertex(name), std::move(label)});
        return static_cast<int>(cx.vertices.size() - 1);
    };
    // orbit representatives first, and labeled; the rest receive transported
    // labels in propagate_labels
    int v2 = V("v2", q8_label("C", C, "B", B));
    int v1 = V("v1", q8_label("B", B, "A", A));
    int v2p = V("v2'", z4_label("A", A));
    int v1p = V("v1'", trivial_label());
    int v1pp = V("v1''", trivial_label());
    int v1ppp = V("v1'''", trivial_label());
    int v2pp = V("v2''", trivial_label());
    int v2ppp = V("v2'''", trivial_label());

    auto E = [&cx](const std::string& name, int a, int b, StabilizerLabel label) {
        cx.edges.push_back({name, a, b, std::move(label)});
        return static_cast<int>(cx.edges.size() - 1);
    };
    int eC = E("eC", v2, v2ppp, z4_label("C", C));
    int eB = E("eB", v2, v1, z4_label("B", B));
    int eA1 = E("eA1", v1, v2p, z4_label("A", A));
    int eA2 = E("eA2", v2p, v1p, z4_label("A", A));
    int eT = E("eT", v1, v1ppp, center_label());
    int ec = E("ec", v2p, v2pp, center_label());
    int right = E("eT'", v1p, v1pp, center_label());
    int top01 = E("eB'", v2ppp, v1ppp, trivial_label());
    int top12 = E("eA1'", v1ppp, v2pp, trivial_label());
    int top23 = E("eA2'", v2pp, v1pp, trivial_label());

    auto F = [&cx](const std::string& name, std::vector<std::pair<int, int>> b) {
        cx.faces.push_back({name, std::move(b), center_label()});
    };
    F("F1", {{eB, 1}, {eT, 1}, {top01, -1}, {eC, -1}});
    F("F2", {{eA1, 1}, {ec, 1}, {top12, -1}, {eT, -1}});
    F("F3", {{eA2, 1}, {right, 1}, {top23, -1}, {ec, -1}});

    cx.idents.push_back({1, eB, top01, U});
    cx.idents.push_back({1, eA1, top12, U});
    cx.idents.push_back({1, eA2, top23, U});
    cx.idents.push_back({1, eT, right, T});

    propagate_labels(cx);
    audit_complex(cx);
    return cx;
}

EquivariantComplex build_sl2_complex() {
    EquivariantComplex cx;
    cx.tag = GroupTag::SL2;

    Mat2 A = gen_A(), bb = gen_b(), cc = gen_c(), U = gen_U();

    auto V = [&cx](const std::string& name, StabilizerLabel label) {
        cx.vertices.push_back({name, vertex(name), std::move(label)});
        return static_cast<int>(cx.vertices.size() - 1);
    };
    int v2p = V("v2'", q8_label("c", cc, "A", A));
    int v1p = V("v1'", te24_label("A", A, "b", bb));
    int v1pp = V("v1''", trivial_label());
    int v2pp = V("v2''", trivial_label());

    auto E = [&cx](const std::string& name, int a, int b, StabilizerLabel label) {
        cx.edges.push_back({name, a, b, std::move(label)});
        return static_cast<int>(cx.edges.size() - 1);
    };
    int eA = E("eA", v2p, v1p, z4_label("A", A));
    int eb = E("eb", v1p, v1pp, z6_label("b", bb));
    int top = E("eA'", v2pp, v1pp, trivial_label());
    int ec = E("ec", v2p, v2pp, z4_label("c", cc));

    cx.faces.push_back({"F", {{eA, 1}, {eb, 1}, {top, -1}, {ec, -1}}, center_label()});
    cx.idents.push_back({1, eA, top, U});

    propagate_labels(cx);
    audit_complex(cx);
    return cx;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// orbit ids numbered by ascending representative (= min fundamental index)
std::pair<std::vector<int>, std::vector<int>> orbits_of(UnionFind& uf, int n) {
    std::vector<int> orbit(n, -1), reps;
    std::map<int, int> root_to_orbit;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (!root_to_orbit.count(r)) {
            // representative = min index in the class
            int mn = i;
            for (int j = i; j < n; ++j)
                if (uf.find(j) == r) mn = std::min(mn, j);
            root_to_orbit[r] = static_cast<int>(reps.size());
            reps.push_back(mn);
        }
    }
    for (int i = 0; i < n; ++i) orbit[i] = root_to_orbit[uf.find(i)];
    return {orbit, reps};
}

}  // namespace

QuotientStructure build_quotient(const EquivariantComplex& cx) {
    int nv = static_cast<int>(cx.vertices.size());
    int ne = static_cast<int>(cx.edges.size());
    int nf = static_cast<int>(cx.faces.size());

    UnionFind ufv(nv), ufe(ne);
    // derived endpoint identifications: need the orientation of each edge
    // identification first
    struct EdgeIdent {
        int source, target;
        Mat2 g;
        bool flip;
    };
    std::vector<EdgeIdent> eidents;
    for (const auto& id : cx.idents) {
        if (id.dim == 0) {
            ufv.unite(id.source, id.target);
            continue;
        }
        if (id.dim != 1) audit_fail("only edge and vertex identifications are supported");
        const EdgeCell& s = cx.edges[id.source];
        const EdgeCell& t = cx.edges[id.target];
        bool flip = false;
        if (cx.geometric) {
            HPoint a = act(id.g, cx.vertices[s.v0].point);
            flip = !(a == cx.vertices[t.v0].point);
        }
        eidents.push_back({id.source, id.target, id.g, flip});
        ufe.unite(id.source, id.target);
        ufv.unite(s.v0, flip ? t.v1 : t.v0);
        ufv.unite(s.v1, flip ? t.v0 : t.v1);
    }
    // explicit vertex identifications may also arrive with dim 0 (handled
    // above); faces are never identified in these complexes

    QuotientStructure qs;
    std::tie(qs.vorbit, qs.vrep) = orbits_of(ufv, nv);
    std::tie(qs.eorbit, qs.erep) = orbits_of(ufe, ne);
    qs.forbit.resize(nf);
    std::iota(qs.forbit.begin(), qs.forbit.end(), 0);
    qs.frep.resize(nf);
    std::iota(qs.frep.begin(), qs.frep.end(), 0);
    qs.ftransport.assign(nf, Mat2::identity());

    // transports by BFS over the identification graph
    auto spread = [](int n, const std::vector<int>& orbit, const std::vector<int>& reps,
                     auto neighbors) {
        std::vector<Mat2> transport(n);
        std::vector<bool> known(n, false);
        for (int r : reps) {
            transport[r] = Mat2::identity();
            known[r] = true;
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (int i = 0; i < n; ++i) {
                if (!known[i]) continue;
                for (auto [j, g] : neighbors(i)) {  // j = g * i
                    if (known[j]) continue;
                    transport[j] = g * transport[i];
                    known[j] = true;
                    progress = true;
                }
            }
        }
        for (int i = 0; i < n; ++i)
            if (!known[i]) audit_fail("identification graph does not reach every cell");
        (void)orbit;
        return transport;
    };

    qs.etransport = spread(ne, qs.eorbit, qs.erep, [&](int i) {
        std::vector<std::pair<int, Mat2>> out;
        for (const auto& id : eidents) {
            if (id.source == i) out.push_back({id.target, id.g});
            if (id.target == i) out.push_back({id.source, inverse(id.g)});
        }
        return out;
    });
    qs.vtransport = spread(nv, qs.vorbit, qs.vrep, [&](int i) {
        std::vector<std::pair<int, Mat2>> out;
        for (const auto& id : eidents) {
            const EdgeCell& s = cx.edges[id.source];
            const EdgeCell& t = cx.edges[id.target];
            int sv[2] = {s.v0, s.v1};
            int tv[2] = {id.flip ? t.v1 : t.v0, id.flip ? t.v0 : t.v1};
            for (int k = 0; k < 2; ++k) {
                if (sv[k] == i) out.push_back({tv[k], id.g});
                if (tv[k] == i) out.push_back({sv[k], inverse(id.g)});
            }
        }
        for (const auto& id : cx.idents)
            if (id.dim == 0) {
                if (id.source == i) out.push_back({id.target, id.g});
                if (id.target == i) out.push_back({id.source, inverse(id.g)});
            }
        return out;
    });

    if (cx.geometric) {
        for (int i = 0; i < nv; ++i) {
            const HPoint& p = cx.vertices[qs.vrep[qs.vorbit[i]]].point;
            if (!(act(qs.vtransport[i], p) == cx.vertices[i].point))
                audit_fail("vertex transport mismatch at " + cx.vertices[i].name);
        }
    }

    // edge orientation relative to the representative
    qs.eorientation.assign(ne, 1);
    for (int i = 0; i < ne; ++i) {
        const EdgeCell& e = cx.edges[i];
        const EdgeCell& r = cx.edges[qs.erep[qs.eorbit[i]]];
        if (cx.geometric) {
            HPoint a = act(qs.etransport[i], cx.vertices[r.v0].point);
            HPoint b = act(qs.etransport[i], cx.vertices[r.v1].point);
            if (a == cx.vertices[e.v0].point && b == cx.vertices[e.v1].point)
                qs.eorientation[i] = 1;
            else if (a == cx.vertices[e.v1].point && b == cx.vertices[e.v0].point)
                qs.eorientation[i] = -1;
            else
                audit_fail("edge transport mismatch at " + e.name);
        } else {
            // synthetic complexes: orientation from orbit data of endpoints
            qs.eorientation[i] = 1;
        }
    }

    // induced incidence
    int NV = qs.vertex_orbits(), NE = qs.edge_orbits(), NF = qs.face_orbits();
    qs.d1 = IntMatrix(NV, NE);
    for (int E = 0; E < NE; ++E) {
        const EdgeCell& e = cx.edges[qs.erep[E]];
        qs.d1.at(qs.vorbit[e.v1], E) += 1;
        qs.d1.at(qs.vorbit[e.v0], E) -= 1;
    }
    qs.d2 = IntMatrix(NE, NF);
    for (int F = 0; F < NF; ++F) {
        const FaceCell& f = cx.faces[qs.frep[F]];
        for (auto [ei, sign] : f.boundary)
            qs.d2.at(qs.eorbit[ei], F) += sign * qs.eorientation[ei];
    }

    // d o d = 0 over Z (and hence over F2)
    IntMatrix dd = qs.d1 * qs.d2;
    for (const Int& x : dd.data)
        if (x != 0) audit_fail("boundary of boundary is nonzero");

    return qs;
}

namespace {
F2Matrix mod2(const IntMatrix& m) {
    F2Matrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            Int a = abs(m.at(r, c));
            if (boost::multiprecision::bit_test(a, 0)) out.set(r, c, true);
        }
    return out;
}
}  // namespace

F2Matrix QuotientComplex::d1_f2() const { return mod2(d1); }
F2Matrix QuotientComplex::d2_f2() const { return mod2(d2); }

QuotientComplex quotient_of(const QuotientStructure& qs) {
    QuotientComplex q;
    q.d1 = qs.d1;
    q.d2 = qs.d2;
    return q;
}

QuotientComplex quotient(const EquivariantComplex& cx) { return quotient_of(build_quotient(cx)); }

int cohomology_dims(const QuotientComplex& q, int p) {
    if (p < 0) throw std::invalid_argument("cohomology_dims: negative degree");
    if (p > 2) return 0;
    int r1 = rank(q.d1_f2());
    int r2 = rank(q.d2_f2());
    if (p == 0) return q.vertices() - r1;
    if (p == 1) return q.edges() - r1 - r2;
    return q.faces() - r2;
}

std::vector<int> betti_numbers(const QuotientComplex& q) {
    return {cohomology_dims(q, 0), cohomology_dims(q, 1), cohomology_dims(q, 2)};
}

namespace {

bool is_two_torsion_kind(StabKind k) {
    return k == StabKind::Z4 || k == StabKind::Q8 || k == StabKind::Te24;
}

}  // namespace

EquivariantComplex torsion_subcomplex(const EquivariantComplex& cx) {
    QuotientStructure qs = build_quotient(cx);

    // a fundamental cell belongs to the subcomplex iff its orbit
    // representative carries a 2-torsion label
    auto vkeep = [&](int i) {
        return is_two_torsion_kind(cx.vertices[qs.vrep[qs.vorbit[i]]].label.kind);
    };
    auto ekeep = [&](int i) {
        return is_two_torsion_kind(cx.edges[qs.erep[qs.eorbit[i]]].label.kind);
    };

    EquivariantComplex sub;
    sub.tag = cx.tag;
    sub.geometric = cx.geometric;
    std::vector<int> vmap(cx.vertices.size(), -1), emap(cx.edges.size(), -1);
    for (size_t i = 0; i < cx.vertices.size(); ++i)
        if (vkeep(static_cast<int>(i))) {
            vmap[i] = static_cast<int>(sub.vertices.size());
            sub.vertices.push_back(cx.vertices[i]);
        }
    for (size_t i = 0; i < cx.edges.size(); ++i)
        if (ekeep(static_cast<int>(i))) {
            const EdgeCell& e = cx.edges[i];
            if (vmap[e.v0] < 0 || vmap[e.v1] < 0)
                audit_fail("torsion edge with non-torsion endpoint");
            emap[i] = static_cast<int>(sub.edges.size());
            sub.edges.push_back({e.name, vmap[e.v0], vmap[e.v1], e.label});
        }

    for (const auto& id : cx.idents)
        if (id.dim == 1 && emap[id.source] >= 0 && emap[id.target] >= 0)
            sub.idents.push_back({1, emap[id.source], emap[id.target], id.g});
    // ambient orbit identifications survive on the subcomplex even when the
    // edge that produced them is dropped
    for (size_t i = 0; i < cx.vertices.size(); ++i) {
        if (vmap[i] < 0) continue;
        int rep = qs.vrep[qs.vorbit[i]];
        if (static_cast<int>(i) != rep && vmap[rep] >= 0)
            sub.idents.push_back({0, vmap[rep], vmap[i], qs.vtransport[i]});
    }
    return sub;
}

int corank(const QuotientComplex& full, const QuotientComplex& sub,
           const std::vector<int>& edge_inclusion) {
    // H^1 = ker(delta^1) / im(delta^0) with delta = transposed incidence
    auto h1 = [](const QuotientComplex& q) {
        F2Matrix delta1 = q.d2_f2().transposed();  // C^1 -> C^2
        F2Matrix delta0 = q.d1_f2().transposed();  // C^0 -> C^1
        std::vector<std::vector<bool>> z = kernel_basis(delta1);
        std::vector<std::vector<bool>> b;
        for (int v = 0; v < q.vertices(); ++v) {
            std::vector<bool> unitv(q.vertices(), false);
            unitv[v] = true;
            b.push_back(delta0.apply(unitv));
        }
        return std::pair(z, b);
    };
    auto [zf, bf] = h1(full);
    auto [zs, bs] = h1(sub);

    // cochain restriction
    F2Matrix S(sub.edges(), full.edges());
    for (int i = 0; i < sub.edges(); ++i) S.set(i, edge_inclusion[i], true);

    Subquotient target = make_subquotient(zs, bs, sub.edges());
    Subquotient source = make_subquotient(zf, bf, full.edges());

    std::vector<std::vector<bool>> images;
    for (const auto& r : source.reps) {
        std::vector<bool> v(full.edges(), false);
        for (size_t i = 0; i < r.size(); ++i) v[i] = r[i];
        images.push_back(target.coordinates(S.apply(v)));
    }
    F2Matrix induced = columns_matrix(images, target.dim());
    return target.dim() - rank(induced);
}

int corank(const EquivariantComplex& cx) {
    QuotientStructure full_qs = build_quotient(cx);
    EquivariantComplex sub = torsion_subcomplex(cx);
    if (sub.edges.empty() && sub.vertices.empty()) return 0;
    QuotientStructure sub_qs = build_quotient(sub);

    // map sub edge-orbits into full edge-orbits through cell names
    std::map<std::string, int> full_edge_orbit;
    for (size_t i = 0; i < cx.edges.size(); ++i)
        full_edge_orbit[cx.edges[i].name] = full_qs.eorbit[i];
    std::vector<int> inclusion(sub_qs.edge_orbits());
    for (int E = 0; E < sub_qs.edge_orbits(); ++E)
        inclusion[E] = full_edge_orbit.at(sub.edges[sub_qs.erep[E]].name);

    return corank(quotient_of(full_qs), quotient_of(sub_qs), inclusion);
}

int AbelianizationResult::f2_corank() const {
    int c = free_rank;
    for (const Int& d : divisors)
        if (!boost::multiprecision::bit_test(d, 0)) ++c;
    return c;
}

std::string AbelianizationResult::to_string() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const Int& d : divisors) {
        if (!first) os << ", ";
        os << d;
        first = false;
    }
    for (int i = 0; i < free_rank; ++i) {
        if (!first) os << ", ";
        os << "inf";
        first = false;
    }
    os << ")";
    return os.str();
}

AbelianizationResult abelianize(const Presentation& p) {
    IntMatrix m(static_cast<int>(p.relations.size()), static_cast<int>(p.generators.size()));
    for (size_t r = 0; r < p.relations.size(); ++r)
        for (auto [gi, e] : p.relations[r]) m.at(static_cast<int>(r), gi) += e;
    SmithResult snf = smith_normal_form(m);
    AbelianizationResult out;
    for (const Int& d : snf.divisors)
        if (d != 1 && d != -1) out.divisors.push_back(abs(d));
    out.free_rank = static_cast<int>(p.generators.size()) - snf.rank;
    return out;
}

namespace {

// word of g over the label generators, via the label closure
std::vector<std::pair<int, int>> stab_word(const Closure& cl, const Mat2& g,
                                           const std::string& where) {
    int idx = cl.index_of(g);
    if (idx < 0) audit_fail(where + ": element does not lie in the labeled stabilizer");
    std::vector<std::pair<int, int>> out;
    for (int gi : cl.words[idx]) out.push_back({gi, 1});
    return out;
}

}  // namespace

Presentation presentation_from_complex(const EquivariantComplex& cx) {
    QuotientStructure qs = build_quotient(cx);

    // connectivity precondition
    {
        QuotientComplex q = quotient_of(qs);
        if (cohomology_dims(q, 0) != 1)
            throw std::invalid_argument("presentation_from_complex: complex is not connected");
    }

    Presentation p;
    // generator layout: per vertex-orbit stabilizer generators, then one
    // letter per edge-orbit
    std::vector<std::vector<int>> vgen_index(qs.vertex_orbits());
    std::vector<Closure> vclosure(qs.vertex_orbits());
    std::vector<const StabilizerLabel*> vlabel(qs.vertex_orbits());
    for (int V = 0; V < qs.vertex_orbits(); ++V) {
        const VertexCell& rep = cx.vertices[qs.vrep[V]];
        vlabel[V] = &rep.label;
        if (rep.label.kind != StabKind::Trivial) vclosure[V] = closure(rep.label.gens, 64);
        for (size_t k = 0; k < rep.label.gens.size(); ++k) {
            vgen_index[V].push_back(static_cast<int>(p.generators.size()));
            p.generators.push_back(rep.label.gen_names[k] + "@" + rep.name);
        }
    }
    std::vector<int> letter_index(qs.edge_orbits());
    for (int E = 0; E < qs.edge_orbits(); ++E) {
        letter_index[E] = static_cast<int>(p.generators.size());
        p.generators.push_back("x_" + cx.edges[qs.erep[E]].name);
    }

    // the element the letter represents: q0^{-1} q1 over the representative
    // edge's endpoint transports
    auto letter_value = [&](int E) {
        const EdgeCell& e = cx.edges[qs.erep[E]];
        return inverse(qs.vtransport[e.v0]) * qs.vtransport[e.v1];
    };

    // formal word with exact matrix audit
    struct WordBuilder {
        std::vector<std::pair<int, int>> word;
        Mat2 value;
        void push(int gen, int exp, const Mat2& m) {
            word.push_back({gen, exp});
            value = value * (exp > 0 ? m : inverse(m));
        }
    };

    auto push_stab_word = [&](WordBuilder& wb, int V, const Mat2& g, bool invert,
                              const std::string& where) {
        auto w = stab_word(vclosure[V], invert ? inverse(g) : g, where);
        for (auto [k, e] : w) wb.push(vgen_index[V][k], e, vlabel[V]->gens[k]);
    };

    auto finish_relation = [&](WordBuilder& wb, const std::string& where) {
        if (!(wb.value == Mat2::identity()))
            audit_fail(where + ": relation does not map to the identity matrix");
        p.relations.push_back(wb.word);
    };

    // vertex group relations
    for (int V = 0; V < qs.vertex_orbits(); ++V) {
        const StabilizerLabel& L = *vlabel[V];
        auto gi = [&](int k) { return vgen_index[V][k]; };
        WordBuilder wb;
        switch (L.kind) {
            case StabKind::Trivial:
                break;
            case StabKind::Center: {
                for (int i = 0; i < 2; ++i) wb.push(gi(0), 1, L.gens[0]);
                finish_relation(wb, "center relation");
                break;
            }
            case StabKind::Z4: {
                for (int i = 0; i < 4; ++i) wb.push(gi(0), 1, L.gens[0]);
                finish_relation(wb, "Z4 relation");
                break;
            }
            case StabKind::Z6: {
                for (int i = 0; i < 6; ++i) wb.push(gi(0), 1, L.gens[0]);
                finish_relation(wb, "Z6 relation");
                break;
            }
            case StabKind::Q8: {
                // x^4, x^2 y^-2, y x y^-1 x
                WordBuilder r1;
                for (int i = 0; i < 4; ++i) r1.push(gi(0), 1, L.gens[0]);
                finish_relation(r1, "Q8 x^4");
                WordBuilder r2;
                r2.push(gi(0), 1, L.gens[0]);
                r2.push(gi(0), 1, L.gens[0]);
                r2.push(gi(1), -1, L.gens[1]);
                r2.push(gi(1), -1, L.gens[1]);
                finish_relation(r2, "Q8 x^2=y^2");
                WordBuilder r3;
                r3.push(gi(1), 1, L.gens[1]);
                r3.push(gi(0), 1, L.gens[0]);
                r3.push(gi(1), -1, L.gens[1]);
                r3.push(gi(0), 1, L.gens[0]);
                finish_relation(r3, "Q8 yxy^-1=x^-1");
                break;
            }
            case StabKind::Te24: {
                // complete presentation from the Cayley graph of the closure:
                // one relation per non-tree Cayley edge
                const Closure& cl = vclosure[V];
                for (int idx = 0; idx < cl.size(); ++idx)
                    for (size_t k = 0; k < L.gens.size(); ++k) {
                        Mat2 next = cl.elements[idx] * L.gens[k];
                        int nidx = cl.index_of(next);
                        if (cl.words[nidx].size() == cl.words[idx].size() + 1 &&
                            std::equal(cl.words[idx].begin(), cl.words[idx].end(),
                                       cl.words[nidx].begin()))
                            continue;  // tree edge of the BFS word tree
                        WordBuilder r;
                        for (int g : cl.words[idx]) r.push(gi(g), 1, L.gens[g]);
                        r.push(gi(static_cast<int>(k)), 1, L.gens[k]);
                        for (auto it = cl.words[nidx].rbegin(); it != cl.words[nidx].rend(); ++it)
                            r.push(gi(*it), -1, L.gens[*it]);
                        finish_relation(r, "Cayley relation");
                    }
                break;
            }
        }
    }

    // edge relations: x_E^{-1} w0(s) x_E w1(s)^{-1} per stabilizer generator
    for (int E = 0; E < qs.edge_orbits(); ++E) {
        const EdgeCell& e = cx.edges[qs.erep[E]];
        if (e.label.kind == StabKind::Trivial) continue;
        int V0 = qs.vorbit[e.v0], V1 = qs.vorbit[e.v1];
        Mat2 q0 = qs.vtransport[e.v0], q1 = qs.vtransport[e.v1];
        Mat2 xval = letter_value(E);
        for (const Mat2& s : e.label.gens) {
            Mat2 s0 = inverse(q0) * s * q0;
            Mat2 s1 = inverse(q1) * s * q1;
            WordBuilder wb;
            wb.push(letter_index[E], -1, xval);
            push_stab_word(wb, V0, s0, false, "edge relation head " + e.name);
            wb.push(letter_index[E], 1, xval);
            // inverse word of s1
            auto w1 = stab_word(vclosure[V1], s1, "edge relation tail " + e.name);
            for (auto it = w1.rbegin(); it != w1.rend(); ++it)
                wb.push(vgen_index[V1][it->first], -1, vlabel[V1]->gens[it->first]);
            finish_relation(wb, "edge relation " + e.name);
        }
    }

    // spanning tree of the orbit 1-skeleton kills its letters
    {
        std::vector<bool> seen(qs.vertex_orbits(), false);
        seen[0] = true;
        bool progress = true;
        std::set<int> tree;
        while (progress) {
            progress = false;
            for (int E = 0; E < qs.edge_orbits(); ++E) {
                const EdgeCell& e = cx.edges[qs.erep[E]];
                int a = qs.vorbit[e.v0], b = qs.vorbit[e.v1];
                if (seen[a] == seen[b]) continue;
                seen[a] = seen[b] = true;
                tree.insert(E);
                progress = true;
            }
        }
        for (int E : tree) {
            if (!(letter_value(E) == Mat2::identity()))
                audit_fail("tree letter does not map to the identity");
            p.relations.push_back({{letter_index[E], 1}});
        }
    }

    // face relations by developing the boundary walk
    for (int F = 0; F < qs.face_orbits(); ++F) {
        const FaceCell& f = cx.faces[qs.frep[F]];
        int m = static_cast<int>(f.boundary.size());
        WordBuilder wb;
        Mat2 entry_first, exit_prev;
        for (int k = 0; k < m; ++k) {
            auto [fe, sign] = f.boundary[k];
            int E = qs.eorbit[fe];
            const EdgeCell& rep = cx.edges[qs.erep[E]];
            Mat2 t = qs.etransport[fe];
            // the slot starts at this fundamental vertex
            int a = sign > 0 ? cx.edges[fe].v0 : cx.edges[fe].v1;
            // which representative endpoint it pulls back to
            int alpha;
            if (cx.geometric) {
                HPoint pa = act(t, cx.vertices[rep.v0].point);
                alpha = (pa == cx.vertices[a].point) ? 0 : 1;
                HPoint pb = act(t, cx.vertices[alpha == 0 ? rep.v0 : rep.v1].point);
                if (!(pb == cx.vertices[a].point)) audit_fail("face walk: endpoint mismatch");
            } else {
                alpha = (qs.eorientation[fe] > 0) == (sign > 0) ? 0 : 1;
            }
            int w_in = alpha == 0 ? rep.v0 : rep.v1;
            int w_out = alpha == 0 ? rep.v1 : rep.v0;
            Mat2 entry = t * qs.vtransport[w_in];
            Mat2 exit = t * qs.vtransport[w_out];
            if (k == 0)
                entry_first = entry;
            else {
                // correction at the shared vertex orbit
                int Vhere = qs.vorbit[a];
                Mat2 sigma = inverse(exit_prev) * entry;
                if (!(sigma == Mat2::identity()))
                    push_stab_word(wb, Vhere, sigma, false, "face walk correction " + f.name);
            }
            wb.push(letter_index[E], alpha == 0 ? 1 : -1, letter_value(E));
            exit_prev = exit;
        }
        Mat2 sigma = inverse(exit_prev) * entry_first;
        if (!(sigma == Mat2::identity())) {
            auto [fe0, sign0] = f.boundary[0];
            int a0 = sign0 > 0 ? cx.edges[fe0].v0 : cx.edges[fe0].v1;
            push_stab_word(wb, qs.vorbit[a0], sigma, false, "face walk closing " + f.name);
        }
        finish_relation(wb, "face relation " + f.name);
    }

    return p;
}

AbelianizationResult abelianization(const EquivariantComplex& cx) {
    return abelianize(presentation_from_complex(cx));
}

std::string serialize(const EquivariantComplex& cx) {
    std::ostringstream os;
    os << "group " << (cx.tag == GroupTag::Gamma0 ? "congruence" : "full") << "\n";
    for (const auto& v : cx.vertices) {
        os << "vertex " << v.name << " label " << v.label.name << " kind "
           << kind_name(v.label.kind);
        if (cx.geometric) os << " z " << format(v.point.z) << " zeta2 " << v.point.zeta_sq;
        os << "\n";
        for (size_t k = 0; k < v.label.gens.size(); ++k)
            os << "  gen " << v.label.gen_names[k] << " = " << format(v.label.gens[k]) << "\n";
    }
    for (const auto& e : cx.edges) {
        os << "edge " << e.name << " " << cx.vertices[e.v0].name << " -> "
           << cx.vertices[e.v1].name << " label " << e.label.name << " kind "
           << kind_name(e.label.kind) << "\n";
        for (size_t k = 0; k < e.label.gens.size(); ++k)
            os << "  gen " << e.label.gen_names[k] << " = " << format(e.label.gens[k]) << "\n";
    }
    for (const auto& f : cx.faces) {
        os << "face " << f.name << " boundary";
        for (auto [ei, sign] : f.boundary)
            os << " " << (sign > 0 ? "+" : "-") << cx.edges[ei].name;
        os << "\n";
    }
    for (const auto& id : cx.idents)
        os << "identify dim " << id.dim << " "
           << (id.dim == 1 ? cx.edges[id.source].name : cx.vertices[id.source].name) << " -> "
           << (id.dim == 1 ? cx.edges[id.target].name : cx.vertices[id.target].name) << " by "
           << format(id.g) << "\n";
    return os.str();
}

}  // namespace bianchi
