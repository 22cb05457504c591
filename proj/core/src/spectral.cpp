#include "bianchi/spectral.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bianchi {

namespace {

[[noreturn]] void engine_fail(const std::string& what) {
    throw std::logic_error("spectral engine: " + what);
}

// hom evaluation: parity of generator gi in the closure word of g
bool gen_parity(const Closure& cl, const Mat2& g, int gi, const std::string& where) {
    int idx = cl.index_of(g);
    if (idx < 0) engine_fail(where + ": element missing from stabilizer closure");
    int count = 0;
    for (int k : cl.words[idx])
        if (k == gi) ++count;
    return count & 1;
}

// indices of the source label generators that are dual to degree-1 module
// generators of its table (Q8: both, Z4: the one, Z6/Center/Te24: none of
// table degree 1)
std::vector<int> degree_one_dual_gens(StabKind kind) {
    switch (kind) {
        case StabKind::Q8: return {0, 1};
        case StabKind::Z4: return {0};
        default: return {};
    }
}

// Restriction map H^*(source group) -> H^*(target group) along the group map
// sending the target label's generators to `iota_images` inside the source
// closure. Degree-1 data is evaluated on homomorphisms; everything else is
// forced by the ring structure and the periodicity classes.
GradedF2Map restriction_from_group_data(const OrbitCellData& source,
                                        const StabilizerLabel& target_label,
                                        const std::vector<Mat2>& iota_images,
                                        const std::string& where,
                                        const std::vector<std::vector<bool>>* h1_override,
                                        std::vector<std::vector<bool>>* h1_out) {
    std::vector<int> src_duals = degree_one_dual_gens(source.label.kind);
    std::vector<std::vector<bool>> h1(src_duals.size());
    GradedF2Space tgt_table = GradedF2Space::table_for(target_label.kind);
    int tgt_h1 = tgt_table.dim(1);
    for (size_t i = 0; i < src_duals.size(); ++i) {
        h1[i].assign(tgt_h1, false);
        // target degree-1 basis elements are dual to the target label
        // generators in order (Z4: b1 <-> gen0; Q8: x1,y1 <-> gen0,gen1);
        // Z6/Center have their periodicity class as H^1, handled canonically
        for (size_t j = 0; j < iota_images.size() && static_cast<int>(j) < tgt_h1; ++j)
            h1[i][j] = gen_parity(source.cl, iota_images[j], src_duals[i], where);
    }
    if (h1_override) h1 = *h1_override;
    if (h1_out) *h1_out = h1;
    return canonical_restriction(source.label.kind, target_label.kind, h1);
}

}  // namespace

int E1Page::dim(int p, int q) const {
    if (p < 0 || p > 2) return 0;
    int total = 0;
    for (const auto& c : cells[p]) total += c.table.dim(q);
    return total;
}

int E1Page::cell_offset(int p, int q, int cell) const {
    int off = 0;
    for (int i = 0; i < cell; ++i) off += cells[p][i].table.dim(q);
    return off;
}

int E1Page::find_cell(int p, const std::string& name) const {
    for (size_t i = 0; i < cells[p].size(); ++i)
        if (cells[p][i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> E1Page::basis_names(int p, int q) const {
    std::vector<std::string> out;
    for (const auto& c : cells[p])
        for (const auto& n : c.table.basis_names(q)) out.push_back(n + "<" + c.name + ">");
    return out;
}

F2Matrix E1Page::d1(int p, int q) const {
    if (p < 0 || p >= 2) return F2Matrix(0, p == 2 ? dim(2, q) : 0);
    F2Matrix m(dim(p + 1, q), dim(p, q));
    for (size_t tc = 0; tc < slots[p].size(); ++tc) {
        int roff = cell_offset(p + 1, q, static_cast<int>(tc));
        for (const auto& [src, map] : slots[p][tc]) {
            int coff = cell_offset(p, q, src);
            F2Matrix block = map.matrix(q);
            for (int r = 0; r < block.rows(); ++r)
                for (int c = 0; c < block.cols(); ++c)
                    if (block.get(r, c)) m.set(roff + r, coff + c, !m.get(roff + r, coff + c));
        }
    }
    return m;
}

E1Page assemble_e1(const EquivariantComplex& cx, const QuotientStructure& qs, int q_max,
                   const std::vector<RestrictionOverride>& overrides) {
    if (q_max < 5) throw std::invalid_argument("assemble_e1: q_max must be at least 5");
    E1Page page;
    page.tag = cx.tag;
    page.q_max = q_max;
    page.cells.resize(3);
    page.slots.resize(2);

    auto make_cell = [](const std::string& name, const StabilizerLabel& label) {
        OrbitCellData c;
        c.name = name;
        c.label = label;
        c.table = GradedF2Space::table_for(label.kind);
        c.cl = closure(label.gens, 64);
        return c;
    };
    for (int V = 0; V < qs.vertex_orbits(); ++V) {
        const VertexCell& rep = cx.vertices[qs.vrep[V]];
        page.cells[0].push_back(make_cell(rep.name, rep.label));
    }
    for (int E = 0; E < qs.edge_orbits(); ++E) {
        const EdgeCell& rep = cx.edges[qs.erep[E]];
        page.cells[1].push_back(make_cell(rep.name, rep.label));
    }
    for (int F = 0; F < qs.face_orbits(); ++F) {
        const FaceCell& rep = cx.faces[qs.frep[F]];
        page.cells[2].push_back(make_cell(rep.name, rep.label));
    }

    auto find_override = [&overrides](const std::string& cell, int slot)
        -> const std::vector<std::vector<bool>>* {
        for (const auto& o : overrides)
            if (o.target_cell == cell && o.slot == slot) return &o.h1;
        return nullptr;
    };

    // vertex -> edge slots
    page.slots[0].resize(qs.edge_orbits());
    for (int E = 0; E < qs.edge_orbits(); ++E) {
        const EdgeCell& e = cx.edges[qs.erep[E]];
        int ends[2] = {e.v0, e.v1};
        for (int s = 0; s < 2; ++s) {
            int V = qs.vorbit[ends[s]];
            const Mat2& q = qs.vtransport[ends[s]];
            std::vector<Mat2> iota;
            for (const Mat2& g : e.label.gens) iota.push_back(inverse(q) * g * q);
            SlotInfo info{1, e.name, s, page.cells[0][V].name, {}};
            GradedF2Map map = restriction_from_group_data(
                page.cells[0][V], e.label, iota, "slot " + e.name + "#" + std::to_string(s),
                find_override(e.name, s), &info.h1);
            page.slots[0][E].push_back({V, std::move(map)});
            page.slot_infos.push_back(std::move(info));
        }
    }

    // edge -> face slots
    page.slots[1].resize(qs.face_orbits());
    for (int F = 0; F < qs.face_orbits(); ++F) {
        const FaceCell& f = cx.faces[qs.frep[F]];
        int slot_idx = 0;
        for (auto [fe, sign] : f.boundary) {
            (void)sign;
            int E = qs.eorbit[fe];
            const Mat2& t = qs.etransport[fe];
            std::vector<Mat2> iota;
            for (const Mat2& g : f.label.gens) iota.push_back(inverse(t) * g * t);
            SlotInfo info{2, f.name, slot_idx, page.cells[1][E].name, {}};
            GradedF2Map map = restriction_from_group_data(
                page.cells[1][E], f.label, iota,
                "face slot " + f.name + "#" + std::to_string(slot_idx), nullptr, &info.h1);
            page.slots[1][F].push_back({E, std::move(map)});
            page.slot_infos.push_back(std::move(info));
            ++slot_idx;
        }
    }

    // d1 o d1 = 0 on the assembled page
    for (int q = 0; q <= q_max; ++q)
        if (!(page.d1(1, q) * page.d1(0, q)).is_zero())
            engine_fail("d1 o d1 != 0 at q = " + std::to_string(q));

    return page;
}

int E2Page::dim(int p, int q) const {
    if (p < 0 || p > 2 || q < 0 || q > q_max) return 0;
    return entries[p][q].dim;
}

int E2Page::total_dim(int n) const {
    int total = 0;
    for (int p = 0; p <= 2 && p <= n; ++p) {
        if (n - p > q_max) throw std::out_of_range("E2Page::total_dim: q_max too small");
        total += dim(p, n - p);
    }
    return total;
}

int total_dims(const E2Page& e2, int n) {
    if (n < 0) throw std::invalid_argument("total_dims: negative degree");
    return e2.total_dim(n);
}

E2Page compute_e2(const E1Page& e1) {
    E2Page page;
    page.q_max = e1.q_max;
    page.entries.assign(3, std::vector<E2Entry>(e1.q_max + 1));
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= e1.q_max; ++q) {
            int n = e1.dim(p, q);
            std::vector<std::vector<bool>> z;
            if (p < 2) {
                z = kernel_basis(e1.d1(p, q));
            } else {
                for (int i = 0; i < n; ++i) {
                    std::vector<bool> unitv(n, false);
                    unitv[i] = true;
                    z.push_back(std::move(unitv));
                }
            }
            std::vector<std::vector<bool>> b;
            if (p > 0) {
                F2Matrix prev = e1.d1(p - 1, q);
                for (int i = 0; i < prev.cols(); ++i) {
                    std::vector<bool> unitv(prev.cols(), false);
                    unitv[i] = true;
                    b.push_back(prev.apply(unitv));
                }
            }
            E2Entry entry;
            entry.sq = make_subquotient(z, b, n);
            entry.dim = entry.sq.dim();
            auto names = e1.basis_names(p, q);
            for (const auto& rep : entry.sq.reps) {
                std::string name;
                for (size_t i = 0; i < rep.size(); ++i)
                    if (rep[i]) name += (name.empty() ? "" : "+") + names[i];
                entry.rep_names.push_back(name.empty() ? "0" : name);
            }
            page.entries[p][q] = std::move(entry);
        }
    }
    return page;
}

ComparisonConfig default_comparison_config(const E1Page& g0) {
    Mat2 A = gen_A(), c = gen_c(), h = gen_h(), T = gen_T(), U = gen_U();
    Mat2 hi = inverse(h), Ti = inverse(T), Ui = inverse(U);
    (void)A;

    ComparisonConfig cfg;
    cfg.i_slots.resize(3);
    cfg.j_slots.resize(3);
    auto at = [&](int p, const std::string& name) -> std::pair<int, int> {
        int idx = g0.find_cell(p, name);
        if (idx < 0) engine_fail("comparison config: unknown cell " + name);
        return {p, idx};
    };
    auto set = [&](std::vector<std::vector<std::vector<ComparisonSlot>>>& side, int p,
                   const std::string& g0name, std::vector<ComparisonSlot> slots) {
        auto [pp, idx] = at(p, g0name);
        if (side[pp].size() < g0.cells[pp].size()) side[pp].resize(g0.cells[pp].size());
        side[pp][idx] = std::move(slots);
    };

    // natural inclusion: cells of the congruence fundamental domain are moved
    // into the smaller fundamental domain by explicit elements
    set(cfg.i_slots, 0, "v2", {{"v2'", h}});
    set(cfg.i_slots, 0, "v1", {{"v1'", h}});
    set(cfg.i_slots, 0, "v2'", {{"v2'", Mat2::identity()}});
    set(cfg.i_slots, 1, "eC", {{"ec", h}});
    set(cfg.i_slots, 1, "eB", {{"eA", h}});
    set(cfg.i_slots, 1, "eA1", {{"eA", c}});
    set(cfg.i_slots, 1, "eA2", {{"eA", Mat2::identity()}});
    set(cfg.i_slots, 1, "eT", {{"eb", T}});
    set(cfg.i_slots, 1, "ec", {{"ec", Mat2::identity()}});
    set(cfg.i_slots, 2, "F1", {{"F", h}});
    set(cfg.i_slots, 2, "F2", {{"F", c}});
    set(cfg.i_slots, 2, "F3", {{"F", Mat2::identity()}});

    // twisted injection: correspondence forced by the stabilizer conjugacies;
    // the loop of C-type edges double-covers the A-type edge orbit and
    // cancels, the T-type and c-type cells collapse
    set(cfg.j_slots, 0, "v2", {{"v1'", Ui}});
    set(cfg.j_slots, 0, "v1", {{"v2'", h * Ui * Ti}});
    set(cfg.j_slots, 0, "v2'", {{"v2'", hi}});
    set(cfg.j_slots, 1, "eC", {{"eA", c * Ui}, {"eA", Ui}});
    set(cfg.j_slots, 1, "eB", {{"eA", h * Ui * Ti}});
    set(cfg.j_slots, 1, "eA1", {{"ec", h * Ti}});
    set(cfg.j_slots, 1, "eA2", {});
    set(cfg.j_slots, 1, "eT", {});
    set(cfg.j_slots, 1, "ec", {});
    set(cfg.j_slots, 2, "F1", {});
    set(cfg.j_slots, 2, "F2", {});
    set(cfg.j_slots, 2, "F3", {});
    return cfg;
}

namespace {

// assembled comparison matrix of one side at (p, q)
F2Matrix side_matrix(const E1Page& sl2, const E1Page& g0,
                     const std::vector<std::vector<std::vector<ComparisonSlot>>>& side, int p,
                     int q, bool twisted) {
    F2Matrix m(g0.dim(p, q), sl2.dim(p, q));
    for (size_t gc = 0; gc < g0.cells[p].size(); ++gc) {
        int roff = g0.cell_offset(p, q, static_cast<int>(gc));
        if (side[p].empty()) continue;
        for (const auto& slot : side[p][gc]) {
            int sc = sl2.find_cell(p, slot.sl2_cell);
            if (sc < 0) engine_fail("comparison: unknown SL2 cell " + slot.sl2_cell);
            int coff = sl2.cell_offset(p, q, sc);
            std::vector<Mat2> iota;
            for (const Mat2& g : g0.cells[p][gc].label.gens) {
                Mat2 img = twisted ? inject_second_factor(g) : g;
                iota.push_back(slot.conjugator * img * inverse(slot.conjugator));
            }
            GradedF2Map map = restriction_from_group_data(
                sl2.cells[p][sc], g0.cells[p][gc].label, iota,
                std::string(twisted ? "j" : "i") + "-slot " + g0.cells[p][gc].name, nullptr,
                nullptr);
            F2Matrix block = map.matrix(q);
            for (int r = 0; r < block.rows(); ++r)
                for (int ccol = 0; ccol < block.cols(); ++ccol)
                    if (block.get(r, ccol))
                        m.set(roff + r, coff + ccol, !m.get(roff + r, coff + ccol));
        }
    }
    return m;
}

}  // namespace

ComparisonResult compare_pages(const E1Page& sl2_e1, const E2Page& sl2_e2, const E1Page& g0_e1,
                               const E2Page& g0_e2, const ComparisonConfig& config) {
    int q_max = std::min(sl2_e1.q_max, g0_e1.q_max);

    // chain-map audit for both sides
    for (int side = 0; side < 2; ++side) {
        const auto& slots = side == 0 ? config.i_slots : config.j_slots;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q <= q_max; ++q) {
                F2Matrix lhs = side_matrix(sl2_e1, g0_e1, slots, p + 1, q, side == 1) *
                               sl2_e1.d1(p, q);
                F2Matrix rhs = g0_e1.d1(p, q) *
                               side_matrix(sl2_e1, g0_e1, slots, p, q, side == 1);
                if (!(lhs == rhs))
                    engine_fail(std::string("comparison does not intertwine d1 (side ") +
                                (side == 0 ? "i" : "j") + ", p = " + std::to_string(p) +
                                ", q = " + std::to_string(q) + ")");
            }
    }

    ComparisonResult res;
    res.q_max = q_max;
    res.cells.assign(3, std::vector<ComparisonCell>(q_max + 1));
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            const E2Entry& src = sl2_e2.entries[p][q];
            const E2Entry& tgt = g0_e2.entries[p][q];
            F2Matrix mi = side_matrix(sl2_e1, g0_e1, config.i_slots, p, q, false);
            F2Matrix mj = side_matrix(sl2_e1, g0_e1, config.j_slots, p, q, true);

            // induced map on E2 subquotients, source doubled
            std::vector<std::vector<bool>> cols;
            for (int side = 0; side < 2; ++side) {
                const F2Matrix& m = side == 0 ? mi : mj;
                for (const auto& rep : src.sq.reps) cols.push_back(tgt.sq.coordinates(m.apply(rep)));
            }
            F2Matrix induced = columns_matrix(cols, tgt.dim);
            int r = rank(induced);

            ComparisonCell cell;
            cell.kernel_dim = induced.cols() - r;
            cell.cokernel_dim = tgt.dim - r;
            for (const auto& kv : kernel_basis(induced)) {
                std::string name;
                for (size_t i = 0; i < kv.size(); ++i) {
                    if (!kv[i]) continue;
                    int side = static_cast<int>(i) / std::max(src.dim, 1);
                    int idx = static_cast<int>(i) % std::max(src.dim, 1);
                    name += (name.empty() ? "" : " + ") + src.rep_names[idx] +
                            (side == 0 ? "@i" : "@j");
                }
                cell.kernel_basis.push_back(name.empty() ? "0" : name);
            }
            res.cells[p][q] = std::move(cell);
        }
    }
    return res;
}

}  // namespace bianchi
