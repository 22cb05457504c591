#include "bianchi/pipeline.hpp"

#include "bianchi/mv.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace bianchi {

namespace {

using nlohmann::json;

constexpr uint64_t kSeed = 0x5eed2026ull;

std::string dump(const json& j) { return j.dump(); }

struct StageBuilder {
    ReportStage stage;

    void check(const std::string& name, const json& expected, const json& actual,
               const std::string& note = "") {
        ReportItem item;
        item.name = name;
        item.status = expected == actual ? Status::Pass : Status::Fail;
        item.expected = dump(expected);
        item.actual = dump(actual);
        item.note = note;
        stage.items.push_back(std::move(item));
    }
    void check_golden(const GoldenValues& g, const std::string& key, const json& actual) {
        check(key, g.at(key), actual, g.label(key));
    }
    void require(const std::string& name, bool ok, const std::string& note = "") {
        stage.items.push_back({name, ok ? Status::Pass : Status::Fail, "true",
                               ok ? "true" : "false", note});
    }
    void flag(const std::string& name, const std::string& note) {
        stage.items.push_back({name, Status::Flagged, "", "", note});
    }
    void table(const std::string& name, const std::string& body) {
        stage.tables.push_back({name, body});
    }
};

// deterministic sampling helpers -------------------------------------------

Rational random_rational(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> num(-height, height);
    std::uniform_int_distribution<int> den(1, height);
    return Rational(num(rng), den(rng));
}

QuadElement random_quad(std::mt19937_64& rng, int height) {
    return QuadElement(random_rational(rng, height), random_rational(rng, height));
}

QuadElement random_nonzero_quad(std::mt19937_64& rng, int height) {
    for (;;) {
        QuadElement x = random_quad(rng, height);
        if (!x.is_zero()) return x;
    }
}

Mat2 random_gamma0_word(std::mt19937_64& rng, int max_len) {
    static const std::vector<Mat2> gens = {gen_T(), gen_U(), gen_A(), gen_B(), gen_C(),
                                           inverse(gen_T()), inverse(gen_U()), inverse(gen_A()),
                                           inverse(gen_B()), inverse(gen_C())};
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    Mat2 m;
    int n = len(rng);
    for (int i = 0; i < n; ++i) m = m * gens[pick(rng)];
    return m;
}

// shared computation state --------------------------------------------------

struct Computation {
    RunConfig config;

    EquivariantComplex g0, sl2;
    QuotientStructure g0_qs, sl2_qs;
    QuotientComplex g0_q, sl2_q;

    E1Page g0_e1, sl2_e1;
    E2Page g0_e2, sl2_e2;
    ComparisonResult cmp;
    std::vector<LESRow> les_rows;
    std::vector<int> amalgam_dims;
    std::vector<int> gamma0_dims;
    std::vector<int> sl2_dims;

    QuotientComplex g0_torsion_q, sl2_torsion_q;
    AbelianizationResult g0_ab;
    int g0_corank = -1;

    // sampled property audits, evaluated once with fixed seeds
    struct {
        bool multiplicative, ultrametric, extends, conj_ok, local_iff;
    } arith{};
    struct {
        bool lands, homo, bridge;
    } amal{};
    struct {
        bool conj_order, action_assoc, height_pos;
    } stab{};

    // set when the comparison audit rejects the configuration; the dependent
    // stages report it as a failure instead of aborting the run
    std::string comparison_error;
};

Computation compute_all(const RunConfig& config) {
    Computation c;
    c.config = config;
    c.g0 = build_gamma0_complex();
    c.sl2 = build_sl2_complex();
    c.g0_qs = build_quotient(c.g0);
    c.sl2_qs = build_quotient(c.sl2);
    c.g0_q = quotient_of(c.g0_qs);
    c.sl2_q = quotient_of(c.sl2_qs);

    c.g0_e1 = assemble_e1(c.g0, c.g0_qs, config.q_max, config.gamma0_overrides);
    c.sl2_e1 = assemble_e1(c.sl2, c.sl2_qs, config.q_max, config.sl2_overrides);
    c.g0_e2 = compute_e2(c.g0_e1);
    c.sl2_e2 = compute_e2(c.sl2_e1);
    try {
        c.cmp = compare_pages(c.sl2_e1, c.sl2_e2, c.g0_e1, c.g0_e2,
                              default_comparison_config(c.g0_e1));
        c.les_rows = degreewise_kernel_cokernel(c.cmp, config.q_max);
        c.amalgam_dims = solve_les(c.les_rows);
    } catch (const std::exception& e) {
        c.comparison_error = e.what();
    }
    for (int n = 0; n <= config.q_max; ++n) {
        c.gamma0_dims.push_back(total_dims(c.g0_e2, n));
        c.sl2_dims.push_back(total_dims(c.sl2_e2, n));
    }

    c.g0_torsion_q = quotient(torsion_subcomplex(c.g0));
    c.sl2_torsion_q = quotient(torsion_subcomplex(c.sl2));
    c.g0_corank = corank(c.g0);
    c.g0_ab = abelianization(c.g0);

    {
        std::mt19937_64 rng(kSeed);
        auto& a = c.arith;
        a.multiplicative = a.ultrametric = a.extends = a.conj_ok = a.local_iff = true;
        for (int i = 0; i < 10000; ++i) {
            QuadElement x = random_nonzero_quad(rng, 12);
            QuadElement y = random_nonzero_quad(rng, 12);
            a.multiplicative &=
                dyadic_valuation(x * y) == dyadic_valuation(x) + dyadic_valuation(y);
            if (!(x + y).is_zero())
                a.ultrametric &= dyadic_valuation(x + y) >=
                                 std::min(dyadic_valuation(x), dyadic_valuation(y));
            a.conj_ok &= norm(conjugate(x)) == norm(x) && conjugate(conjugate(x)) == x;
            a.local_iff &=
                in_subring(x, SubringTag::DyadicLocal) == (dyadic_valuation(x) >= 0);
            Rational r = random_rational(rng, 40);
            if (r != 0)
                a.extends &=
                    dyadic_valuation(QuadElement(r, Rational(0))) == 2 * two_adic_valuation(r);
        }
    }
    {
        std::mt19937_64 rng(kSeed + 1);
        auto& a = c.amal;
        a.lands = a.homo = a.bridge = true;
        for (int i = 0; i < 1000; ++i) {
            Mat2 m = random_gamma0_word(rng, 10);
            Mat2 n = random_gamma0_word(rng, 10);
            Mat2 jm = inject_second_factor(m);
            a.lands &= jm.has_integral_entries() && jm.det() == QuadElement(1) && in_gamma0(m);
            a.homo &= inject_second_factor(m * n) == jm * inject_second_factor(n);
            a.bridge &= jm == basis_swap_conjugate(inject_second_factor_swapped(m));
        }
    }
    {
        std::mt19937_64 rng(kSeed + 2);
        auto& s = c.stab;
        s.conj_order = s.action_assoc = s.height_pos = true;
        for (int i = 0; i < 200; ++i) {
            Mat2 x = random_gamma0_word(rng, 8);
            s.conj_order &=
                element_order(conjugate_by(gen_A(), x), 64) == element_order(gen_A(), 64);
            Mat2 y = random_gamma0_word(rng, 6);
            for (const auto& nv : fundamental_vertices()) {
                HPoint lhs = act(x * y, nv.point);
                s.action_assoc &= lhs == act(x, act(y, nv.point));
                s.height_pos &= lhs.zeta_sq > 0;
            }
        }
    }
    return c;
}

// stages ---------------------------------------------------------------------

ReportStage stage_arithmetic(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "arithmetic";
    QuadElement w = QuadElement::omega();

    b.check_golden(g, "valuation_omega", dyadic_valuation(w));
    b.check_golden(g, "valuation_two", dyadic_valuation(QuadElement(2)));
    b.check_golden(g, "valuation_one", dyadic_valuation(QuadElement(1)));
    b.check_golden(g, "valuation_half", dyadic_valuation(QuadElement(Rational(1, 2), Rational(0))));

    b.check("norm_omega", json(2), json(norm(w).convert_to<int>()));
    b.require("uniformizer_omega", is_uniformizer(w));
    b.require("uniformizer_two_fails", !is_uniformizer(QuadElement(2)));
    b.require("uniformizer_unit_fails", !is_uniformizer(QuadElement(1)));
    b.require("valuation_of_zero_is_sentinel", valuation(QuadElement(0)).is_infinite());

    b.require("valuation_additive_on_products", c.arith.multiplicative, "10000 samples");
    b.require("valuation_ultrametric", c.arith.ultrametric, "10000 samples");
    b.require("valuation_extends_double_rational_valuation", c.arith.extends, "10000 samples");
    b.require("conjugation_involution_norm_invariance", c.arith.conj_ok, "10000 samples");
    b.require("dyadic_local_iff_nonnegative_valuation", c.arith.local_iff, "10000 samples");
    return b.stage;
}

ReportStage stage_amalgam(const GoldenValues&, const Computation& c) {
    StageBuilder b;
    b.stage.name = "amalgam";
    Mat2 A = gen_A(), B = gen_B(), C = gen_C(), cc = gen_c(), h = gen_h();

    b.require("conjugacy_hCh_inverse_equals_c", verify_conjugacy(C, cc, h),
              "explicit conjugator between the two loop stabilizers");

    Mat2 cCc = inverse(cc) * C * cc;
    b.require("swapped_injection_A_equals_cCc", inject_second_factor_swapped(A) == cCc,
              "first printed conjugacy, exact");
    b.require("swapped_injection_B_equals_minus_cBc",
              inject_second_factor_swapped(B) == -(inverse(cc) * B * cc),
              "second printed conjugacy, exact");
    b.require("printed_injection_is_swap_conjugate",
              inject_second_factor(A) == basis_swap_conjugate(cCc),
              "the two published forms differ by the basis swap");
    b.flag("swapped_injection_C_equals_minus_A",
           inject_second_factor_swapped(C) == -A
               ? "holds with the central sign: image is -A, generating <A>"
               : "UNEXPECTED: identity fails beyond the central sign");
    b.flag("injection_form",
           "the conjugacy identities hold verbatim for the unswapped injection form; the "
           "printed form satisfies them after conjugation by the basis swap");

    b.require("injection_lands_in_integral_sl2", c.amal.lands, "1000 random words");
    b.require("injection_is_homomorphism", c.amal.homo, "1000 random pairs");
    b.require("swap_bridge_identity", c.amal.bridge, "1000 random words");

    std::ostringstream gens;
    for (const auto& [name, m] : named_generators()) gens << name << " = " << format(m) << "\n";
    b.table("named_generators", gens.str());
    return b.stage;
}

ReportStage stage_stabilizers(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "stabilizers";
    Mat2 A = gen_A(), B = gen_B(), C = gen_C(), bb = gen_b(), cc = gen_c(), h = gen_h();

    auto order_of = [](const Mat2& m) { return json(element_order(m, 64).value_or(-1)); };
    b.check_golden(g, "order_A", order_of(A));
    b.check_golden(g, "order_B", order_of(B));
    b.check_golden(g, "order_C", order_of(C));
    b.check_golden(g, "order_c", order_of(cc));
    b.check_golden(g, "order_b", order_of(bb));
    b.check("order_minus_identity", json(2), order_of(minus_identity()));
    b.require("order_parabolic_exceeds_cap", !element_order(gen_T(), 64).has_value());

    b.check_golden(g, "subgroup_order_CB", json(closure({C, B}, 100).size()));
    b.check_golden(g, "subgroup_order_BA", json(closure({B, A}, 100).size()));
    b.check_golden(g, "subgroup_order_cA", json(closure({cc, A}, 100).size()));
    b.check_golden(g, "subgroup_order_Ab", json(closure({A, bb}, 100).size()));
    b.require("quaternion_relations_CB", is_quaternion_group(C, B));
    b.require("quaternion_relations_BA", is_quaternion_group(B, A));
    b.require("quaternion_relations_cA", is_quaternion_group(cc, A));
    b.require("binary_tetrahedral_Ab",
              binary_tetrahedral_witness(closure({A, bb}, 100)).has_value());

    // fixed-point audit of every labeled generator, via the exact action
    auto fixes = [](const Mat2& m, const std::string& v) { return fixes_point(m, vertex(v)); };
    b.require("C_fixes_its_edge", fixes(C, "v2") && fixes(C, "v2'''"));
    b.require("B_fixes_its_edge", fixes(B, "v2") && fixes(B, "v1"));
    b.require("A_fixes_its_axis", fixes(A, "v1") && fixes(A, "v2'") && fixes(A, "v1'"));
    b.require("c_fixes_its_edge", fixes(cc, "v2'") && fixes(cc, "v2''"));
    b.require("b_fixes_its_edge", fixes(bb, "v1'") && fixes(bb, "v1''"));

    bool hquad = act(h, vertex("v2")) == vertex("v2'") && act(h, vertex("v1")) == vertex("v1'") &&
                 act(h, vertex("v1'''")) == vertex("v1''") &&
                 act(h, vertex("v2'''")) == vertex("v2''");
    b.require("h_maps_quadrangle_onto_quadrangle", hquad);

    // identification pattern: U glues the three bottom edges to the top ones,
    // T glues the two marked vertical edges
    bool upattern = act(gen_U(), vertex("v2")) == vertex("v2'''") &&
                    act(gen_U(), vertex("v1")) == vertex("v1'''") &&
                    act(gen_U(), vertex("v2'")) == vertex("v2''") &&
                    act(gen_U(), vertex("v1'")) == vertex("v1''");
    bool tpattern = act(gen_T(), vertex("v1")) == vertex("v1'") &&
                    act(gen_T(), vertex("v1'''")) == vertex("v1''");
    b.require("identification_pattern_U", upattern);
    b.require("identification_pattern_T", tpattern);
    b.table("identification_matching",
            "U: eB->eB', eA1->eA1', eA2->eA2' (bottom row onto top row)\n"
            "T: eT->eT' (interior vertical onto right boundary)");

    b.require("order_invariant_under_conjugation", c.stab.conj_order, "200 samples");
    b.require("action_is_left_action_on_vertices", c.stab.action_assoc,
              "200 words x 8 vertices");
    b.require("heights_stay_positive", c.stab.height_pos);
    return b.stage;
}

ReportStage stage_complexes(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "complexes";
    b.check_golden(g, "gamma0_vertex_count", json(c.g0.vertices.size()));
    b.check_golden(g, "gamma0_face_count", json(c.g0.faces.size()));
    b.check_golden(g, "sl2_face_count", json(c.sl2.faces.size()));
    b.check_golden(g, "gamma0_orbit_counts",
                   json({c.g0_qs.vertex_orbits(), c.g0_qs.edge_orbits(), c.g0_qs.face_orbits()}));
    b.check_golden(g, "sl2_orbit_counts",
                   json({c.sl2_qs.vertex_orbits(), c.sl2_qs.edge_orbits(),
                         c.sl2_qs.face_orbits()}));

    // nested fundamental domains: every cell of the smaller complex occurs in
    // the larger one, matched by exact geometry
    bool nested = true;
    for (const auto& v : c.sl2.vertices) {
        bool found = false;
        for (const auto& w : c.g0.vertices) found |= w.point == v.point;
        nested &= found;
    }
    b.require("sl2_cells_inside_gamma0_domain", nested);

    // vertex stabilizer kinds of the smaller complex
    std::vector<std::string> kinds;
    for (int V = 0; V < c.sl2_qs.vertex_orbits(); ++V)
        kinds.push_back(kind_name(c.sl2.vertices[c.sl2_qs.vrep[V]].label.kind));
    b.check("sl2_vertex_stabilizer_kinds", json({"Q8", "Te24"}), json(kinds));

    std::ostringstream cells;
    for (const auto& v : c.g0.vertices)
        cells << v.name << " " << v.label.name << " z=" << format(v.point.z)
              << " zeta^2=" << v.point.zeta_sq << "\n";
    b.table("gamma0_vertices", cells.str());
    b.table("gamma0_complex", serialize(c.g0));
    b.table("sl2_complex", serialize(c.sl2));
    return b.stage;
}

ReportStage stage_quotient_topology(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "quotient_topology";
    b.check_golden(g, "gamma0_quotient_betti", json(betti_numbers(c.g0_q)));
    b.check_golden(g, "sl2_quotient_betti", json(betti_numbers(c.sl2_q)));
    b.check_golden(g, "gamma0_quotient_euler", json(c.g0_q.euler_characteristic()));
    b.check_golden(g, "sl2_quotient_euler", json(c.sl2_q.euler_characteristic()));
    b.check("gamma0_cohomology_dim_3", json(0), json(cohomology_dims(c.g0_q, 3)));

    b.check_golden(g, "gamma0_torsion_betti",
                   json({cohomology_dims(c.g0_torsion_q, 0), cohomology_dims(c.g0_torsion_q, 1)}));
    b.check_golden(g, "sl2_torsion_b1", json(cohomology_dims(c.sl2_torsion_q, 1)));
    b.check_golden(g, "gamma0_corank", json(c.g0_corank));
    return b.stage;
}

ReportStage stage_abelianization(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "abelianization";
    const AbelianizationResult& ab = c.g0_ab;
    b.check_golden(g, "abelianization_f2_corank", json(ab.f2_corank()));
    // dim Hom(H1, F2) must equal dim H^1 computed through the spectral route
    b.check("abelianization_matches_h1", json(c.gamma0_dims[1]), json(ab.f2_corank()),
            "independent routes to dim H^1 agree");
    b.table("abelianization_divisors", ab.to_string());
    return b.stage;
}

ReportStage stage_tables(const GoldenValues&) {
    StageBuilder b;
    b.stage.name = "cohomology_tables";
    auto dims_of = [](StabKind k, int upto) {
        GradedF2Space t = GradedF2Space::table_for(k);
        std::vector<int> out;
        for (int q = 0; q <= upto; ++q) out.push_back(t.dim(q));
        return json(out);
    };
    b.check("table_Q8_dims", json({1, 2, 2, 1, 1, 2, 2, 1}), dims_of(StabKind::Q8, 7));
    b.check("table_Z4_dims", json({1, 1, 1, 1, 1, 1, 1, 1}), dims_of(StabKind::Z4, 7));
    b.check("table_Te24_dims", json({1, 0, 0, 1, 1, 0, 0, 1}), dims_of(StabKind::Te24, 7));
    b.check("table_center_dims", json({1, 1, 1, 1, 1, 1, 1, 1}), dims_of(StabKind::Center, 7));

    // closed-form dimension count
    bool closed_form = true;
    for (StabKind k : {StabKind::Center, StabKind::Z4, StabKind::Z6, StabKind::Q8,
                       StabKind::Te24}) {
        GradedF2Space t = GradedF2Space::table_for(k);
        for (int q = 0; q <= 12; ++q) {
            int count = 0;
            for (const auto& gen : t.generators())
                if (gen.degree <= q && (q - gen.degree) % t.period() == 0) ++count;
            closed_form &= count == t.dim(q);
        }
    }
    b.require("dimension_closed_form", closed_form);

    // the printed Te24 -> Z4 leg: zero in degree 3, rank 1 in degree 4
    GradedF2Map te_to_z4 = canonical_restriction(StabKind::Te24, StabKind::Z4, {});
    b.check("te24_to_z4_degree3_rank", json(0), json(rank(te_to_z4.matrix(3))));
    b.check("te24_to_z4_degree4_rank", json(1), json(rank(te_to_z4.matrix(4))));
    b.require("te24_to_z4_periodicity", te_to_z4.commutes_with_periodicity(12));

    GradedF2Map q8_id = canonical_restriction(StabKind::Q8, StabKind::Q8,
                                              {{true, false}, {false, true}});
    bool full_rank = true;
    for (int q = 0; q <= 9; ++q) {
        F2Matrix m = q8_id.matrix(q);
        full_rank &= rank(m) == m.cols() && m.rows() == m.cols();
    }
    b.require("q8_identity_restriction_full_rank", full_rank);
    b.require("q8_identity_periodicity", q8_id.commutes_with_periodicity(12));
    return b.stage;
}

json e2_rows(const E2Page& page, int cols) {
    // rows q mod 4 = 1, 2, 3, 0 sampled at q = 5, 6, 7, 8 and cross-checked
    // against q = 1..4 by the caller
    json rows = json::array();
    for (int q : {1, 2, 3, 4}) {
        json row = json::array();
        for (int p = 0; p < cols; ++p) row.push_back(page.dim(p, q));
        rows.push_back(std::move(row));
    }
    return rows;
}

ReportStage stage_e2(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "e2_pages";

    b.check_golden(g, "e2_gamma0_rows", e2_rows(c.g0_e2, 3));
    b.check_golden(g, "e2_sl2_rows", e2_rows(c.sl2_e2, 2));
    b.check_golden(g, "e2_gamma0_bottom",
                   json({c.g0_e2.dim(0, 0), c.g0_e2.dim(1, 0), c.g0_e2.dim(2, 0)}));
    b.check_golden(g, "e2_sl2_bottom",
                   json({c.sl2_e2.dim(0, 0), c.sl2_e2.dim(1, 0), c.sl2_e2.dim(2, 0)}));

    // bottom row = quotient cohomology in every degree
    bool bottom = true;
    for (int p = 0; p <= 2; ++p) {
        bottom &= c.g0_e2.dim(p, 0) == cohomology_dims(c.g0_q, p);
        bottom &= c.sl2_e2.dim(p, 0) == cohomology_dims(c.sl2_q, p);
    }
    b.require("bottom_row_equals_quotient_cohomology", bottom);

    // periodicity of the positive rows over two periods
    bool periodic = true;
    for (int p = 0; p <= 2; ++p)
        for (int q = 1; q + 4 <= c.config.q_max; ++q)
            periodic &= c.g0_e2.dim(p, q) == c.g0_e2.dim(p, q + 4);
    b.require("e2_rows_period_4", periodic);

    // stationary F2 column p = 2
    bool column = true;
    for (int q = 0; q <= c.config.q_max; ++q) column &= c.g0_e2.dim(2, q) == 1;
    b.require("gamma0_p2_column_constant", column);

    b.check_golden(g, "gamma0_cohomology_dims", json(c.gamma0_dims));
    b.check_golden(g, "gamma0_h1_dim", json(c.gamma0_dims[1]));
    bool tot_periodic = true;
    for (int n = 2; n + 4 <= c.config.q_max; ++n)
        tot_periodic &= c.gamma0_dims[n] == c.gamma0_dims[n + 4];
    b.require("gamma0_total_dims_period_4", tot_periodic);
    b.flag("case_label_reading",
           "the closed-form case display is implemented as: degree 0 -> 1, degree 1 -> 4, "
           "degrees 2,3 mod 4 -> 6, degrees 0,1 mod 4 (>= 4) -> 5");

    std::ostringstream e2txt;
    for (const E2Page* page : {&c.g0_e2, &c.sl2_e2}) {
        e2txt << (page == &c.g0_e2 ? "congruence page" : "full-group page") << "\n";
        for (int q = 4; q >= 0; --q) {
            e2txt << "  q=" << q << ":";
            for (int p = 0; p <= 2; ++p) {
                e2txt << "  p" << p << " dim " << page->dim(p, q) << " <";
                const auto& names = page->entries[p][q].rep_names;
                for (size_t i = 0; i < names.size(); ++i)
                    e2txt << (i ? ", " : "") << names[i];
                e2txt << ">";
            }
            e2txt << "\n";
        }
    }
    b.table("e2_basis", e2txt.str());

    std::ostringstream restr;
    for (const auto& info : c.g0_e1.slot_infos) {
        restr << info.target_cell << "#" << info.slot << " <- " << info.source_cell << " h1=[";
        for (size_t r = 0; r < info.h1.size(); ++r) {
            if (r) restr << ";";
            for (bool bit : info.h1[r]) restr << (bit ? '1' : '0');
        }
        restr << "]\n";
    }
    b.table("gamma0_restriction_configuration", restr.str());
    return b.stage;
}

ReportStage stage_comparison(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "comparison";
    if (!c.comparison_error.empty()) {
        b.require("comparison_audit", false, c.comparison_error);
        return b.stage;
    }

    // the lemma table at representative degrees: kernels at p = 0 and p = 1,
    // rows q mod 4 = 1, 2, 3, 0
    json k0 = json::array(), k1 = json::array();
    for (int q : {1, 2, 3, 4}) {
        k0.push_back(c.cmp.at(0, q).kernel_dim);
        k1.push_back(c.cmp.at(1, q).kernel_dim);
    }
    b.check("kernel_column_p0", json({0, 0, 2, 1}), k0, "rows q mod 4 = 1,2,3,0");
    b.check("kernel_column_p1", json({1, 1, 1, 0}), k1, "rows q mod 4 = 1,2,3,0");

    bool surjective = true;
    for (int q = 1; q <= c.config.q_max; ++q)
        for (int p = 0; p <= 1; ++p) surjective &= c.cmp.at(p, q).cokernel_dim == 0;
    b.require("surjective_on_columns_p01", surjective, "all q > 0");

    bool column_coker = true;
    for (int q = 0; q <= c.config.q_max; ++q) column_coker &= c.cmp.at(2, q).cokernel_dim == 1;
    b.require("p2_column_constant_cokernel", column_coker);

    b.check("bottom_kernel_h0", json(1), json(c.cmp.at(0, 0).kernel_dim));
    b.check("bottom_h1_iso", json({0, 0}),
            json({c.cmp.at(0, 1).kernel_dim + c.cmp.at(1, 0).kernel_dim,
                  c.cmp.at(0, 1).cokernel_dim + c.cmp.at(1, 0).cokernel_dim}));

    json rows = json::array();
    rows.push_back({c.les_rows[0].kernel_dim, c.les_rows[0].cokernel_dim});
    rows.push_back({c.les_rows[1].kernel_dim, c.les_rows[1].cokernel_dim});
    for (int n : {6, 7, 8, 5})  // representatives of n mod 4 = 2, 3, 0, 1 with n >= 2
        rows.push_back({c.les_rows[n].kernel_dim, c.les_rows[n].cokernel_dim});
    b.check_golden(g, "comparison_rows", rows);

    bool stable = true;
    for (int n = 2; n + 4 <= c.config.q_max; ++n)
        stable &= c.les_rows[n].kernel_dim == c.les_rows[n + 4].kernel_dim &&
                  c.les_rows[n].cokernel_dim == c.les_rows[n + 4].cokernel_dim;
    b.require("comparison_rows_period_4", stable);

    std::ostringstream kb;
    for (int q = 4; q >= 1; --q)
        for (int p = 0; p <= 1; ++p) {
            const auto& cell = c.cmp.at(p, q);
            if (cell.kernel_basis.empty()) continue;
            kb << "(p=" << p << ", q=" << q << "): ";
            for (size_t i = 0; i < cell.kernel_basis.size(); ++i)
                kb << (i ? "; " : "") << cell.kernel_basis[i];
            kb << "\n";
        }
    b.table("kernel_basis", kb.str());
    return b.stage;
}

ReportStage stage_mv(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "mayer_vietoris";
    if (!c.comparison_error.empty()) {
        b.require("comparison_inputs", false, c.comparison_error);
        return b.stage;
    }
    b.check_golden(g, "amalgam_dims", json(c.amalgam_dims));

    // split exactness bookkeeping: source and target dimensions match the
    // rank decomposition in every degree
    bool ranks_ok = true;
    for (int n = 0; n <= c.config.q_max; ++n) {
        int source = 2 * c.sl2_dims[n];
        int rank_n = source - c.les_rows[n].kernel_dim;
        ranks_ok &= c.gamma0_dims[n] == rank_n + c.les_rows[n].cokernel_dim;
    }
    b.require("rank_bookkeeping_consistent", ranks_ok,
              "dim H^n(congruence) = rank + cokernel and rank = 2 dim H^n(full) - kernel");

    bool periodic = true;
    for (int n = 6; n + 4 <= c.config.q_max; ++n)
        periodic &= c.amalgam_dims[n] == c.amalgam_dims[n + 4];
    b.require("amalgam_dims_period_4", periodic);

    std::ostringstream rows;
    for (const auto& r : c.les_rows)
        rows << "n=" << r.degree << " kernel=" << r.kernel_dim << " cokernel=" << r.cokernel_dim
             << " dim=" << c.amalgam_dims[r.degree] << "\n";
    b.table("long_exact_sequence", rows.str());
    return b.stage;
}

ReportStage stage_free_module(const GoldenValues& g, const Computation& c) {
    StageBuilder b;
    b.stage.name = "free_module";
    if (!c.comparison_error.empty()) {
        b.require("comparison_inputs", false, c.comparison_error);
        return b.stage;
    }

    std::vector<int> claimed = g.at("claimed_basis_degrees").get<std::vector<int>>();
    FreeModuleVerdict v = free_module_check(c.amalgam_dims, 4, claimed);
    b.require("free_module_verdict", v.ok, v.reason);
    b.check_golden(g, "poincare_numerator", json(v.numerator));
    b.check_golden(g, "free_module_basis_degrees", json(v.basis_degrees));

    PoincareSeries series = poincare_series(c.amalgam_dims);
    b.check("poincare_series_roundtrip", json(c.amalgam_dims),
            json(series.coefficients(c.config.q_max)));
    b.table("poincare_series", series.to_string());

    PoincareSeries g0_series = poincare_series(c.gamma0_dims);
    b.check_golden(g, "gamma0_poincare_numerator", json(g0_series.numerator));

    b.flag("basis_rank_reading",
           "the computed basis multiset has ten degrees including the degree-0 unit; the nine "
           "positive-degree classes match the claimed basis");
    return b.stage;
}

}  // namespace

const std::vector<std::string>& pipeline_stage_names() {
    static const std::vector<std::string> names = {
        "arithmetic",     "amalgam",       "stabilizers",        "complexes",
        "quotient_topology", "abelianization", "cohomology_tables", "e2_pages",
        "comparison",     "mayer_vietoris", "free_module"};
    return names;
}

struct Pipeline::Impl {
    Computation c;
};

Pipeline::Pipeline(const RunConfig& config) : impl_(new Impl) {
    config.validate();
    impl_->c = compute_all(config);
}

Pipeline::~Pipeline() = default;
Pipeline::Pipeline(Pipeline&&) noexcept = default;
Pipeline& Pipeline::operator=(Pipeline&&) noexcept = default;

PipelineResult Pipeline::judge(const GoldenValues& golden) const {
    const Computation& c = impl_->c;
    const RunConfig& config = c.config;

    Report report;
    auto want = [&config](const std::string& name) {
        return config.stage == "all" || config.stage == name;
    };
    if (want("arithmetic")) report.stages.push_back(stage_arithmetic(golden, c));
    if (want("amalgam")) report.stages.push_back(stage_amalgam(golden, c));
    if (want("stabilizers")) report.stages.push_back(stage_stabilizers(golden, c));
    if (want("complexes")) report.stages.push_back(stage_complexes(golden, c));
    if (want("quotient_topology")) report.stages.push_back(stage_quotient_topology(golden, c));
    if (want("abelianization")) report.stages.push_back(stage_abelianization(golden, c));
    if (want("cohomology_tables")) report.stages.push_back(stage_tables(golden));
    if (want("e2_pages")) report.stages.push_back(stage_e2(golden, c));
    if (want("comparison")) report.stages.push_back(stage_comparison(golden, c));
    if (want("mayer_vietoris")) report.stages.push_back(stage_mv(golden, c));
    if (want("free_module")) report.stages.push_back(stage_free_module(golden, c));
    if (report.stages.empty())
        throw std::invalid_argument("pipeline: unknown stage '" + config.stage + "'");

    PipelineResult out;
    out.report = std::move(report);
    out.exit_code = out.report.passed() ? 0 : 1;
    return out;
}

PipelineResult run_pipeline(const RunConfig& config, const GoldenValues& golden) {
    config.validate();
    std::unique_ptr<Pipeline> pipeline;
    try {
        pipeline = std::make_unique<Pipeline>(config);
    } catch (const std::exception& e) {
        // a construction-level audit rejected the inputs; report the failure
        // instead of aborting so negative controls surface as exit code 1
        PipelineResult out;
        ReportStage stage;
        stage.name = "computation";
        stage.items.push_back({"construction_audits", Status::Fail, "pass", "exception", e.what()});
        out.report.stages.push_back(std::move(stage));
        out.exit_code = 1;
        return out;
    }
    return pipeline->judge(golden);
}

}  // namespace bianchi
