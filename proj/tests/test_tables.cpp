#include "bianchi/tables.hpp"

#include <doctest.h>

using namespace bianchi;

namespace {
std::vector<int> dims(StabKind k, int upto) {
    GradedF2Space t = GradedF2Space::table_for(k);
    std::vector<int> out;
    for (int q = 0; q <= upto; ++q) out.push_back(t.dim(q));
    return out;
}
}  // namespace

TEST_CASE("table dimensions") {
    CHECK(dims(StabKind::Q8, 8) == std::vector<int>{1, 2, 2, 1, 1, 2, 2, 1, 1});
    CHECK(dims(StabKind::Z4, 6) == std::vector<int>{1, 1, 1, 1, 1, 1, 1});
    CHECK(dims(StabKind::Te24, 8) == std::vector<int>{1, 0, 0, 1, 1, 0, 0, 1, 1});
    CHECK(dims(StabKind::Center, 4) == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(dims(StabKind::Z6, 4) == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(GradedF2Space::table_for(StabKind::Q8).dim(0) == 1);
    CHECK_THROWS_AS(GradedF2Space::table_for(StabKind::Trivial), std::invalid_argument);
}

TEST_CASE("closed-form dimension count") {
    for (StabKind k :
         {StabKind::Center, StabKind::Z4, StabKind::Z6, StabKind::Q8, StabKind::Te24}) {
        GradedF2Space t = GradedF2Space::table_for(k);
        for (int q = 0; q <= 13; ++q) {
            int count = 0;
            for (const auto& gen : t.generators())
                if (gen.degree <= q && (q - gen.degree) % t.period() == 0) ++count;
            CHECK(count == t.dim(q));
        }
    }
}

TEST_CASE("basis names") {
    GradedF2Space q8 = GradedF2Space::table_for(StabKind::Q8);
    CHECK(q8.basis_names(0) == std::vector<std::string>{"1"});
    CHECK(q8.basis_names(1) == std::vector<std::string>{"x1", "y1"});
    CHECK(q8.basis_names(4) == std::vector<std::string>{"e4"});
    CHECK(q8.basis_names(5) == std::vector<std::string>{"e4x1", "e4y1"});
    GradedF2Space z4 = GradedF2Space::table_for(StabKind::Z4);
    CHECK(z4.basis_names(3) == std::vector<std::string>{"e2b1"});
    CHECK(z4.basis_names(4) == std::vector<std::string>{"e2^2"});
}

TEST_CASE("ring products inside Q8") {
    GradedF2Space q8 = GradedF2Space::table_for(StabKind::Q8);
    GradedClass x1{1, {{0, 1}}}, y1{1, {{0, 2}}};
    GradedClass x2 = multiply(q8, x1, x1);
    CHECK(x2.terms == std::vector<std::pair<int, int>>{{0, 3}});
    GradedClass y1y1 = multiply(q8, y1, y1);
    CHECK(y1y1.terms == std::vector<std::pair<int, int>>{{0, 3}, {0, 4}});  // x2 + y2
    GradedClass x3 = multiply(q8, x2, y1);
    CHECK(x3.terms == std::vector<std::pair<int, int>>{{0, 5}});
    // degree-4 products of positive generators vanish into the free tail
    CHECK(multiply(q8, x2, x2).terms.empty());
}

TEST_CASE("restriction to the three cyclic subgroups") {
    // the (1,0), (0,1), (1,1) assignments on degree one
    for (auto bits : std::vector<std::vector<std::vector<bool>>>{
             {{true}, {false}}, {{false}, {true}}, {{true}, {true}}}) {
        GradedF2Map m = canonical_restriction(StabKind::Q8, StabKind::Z4, bits);
        CHECK(rank(m.matrix(1)) == 1);
        CHECK(rank(m.matrix(2)) == 0);  // products of degree-1 classes die: b1^2 = 0
        CHECK(rank(m.matrix(3)) == 0);
        CHECK(rank(m.matrix(4)) == 1);  // e4 -> e2^2
        CHECK(rank(m.matrix(5)) == 1);
        CHECK(m.commutes_with_periodicity(12));
    }
}

TEST_CASE("restriction to the center") {
    GradedF2Map m = canonical_restriction(StabKind::Q8, StabKind::Center,
                                          {{false}, {false}});
    CHECK(rank(m.matrix(1)) == 0);
    CHECK(rank(m.matrix(2)) == 0);
    CHECK(rank(m.matrix(3)) == 0);
    CHECK(rank(m.matrix(4)) == 1);  // e4 -> t1^4
    CHECK(m.commutes_with_periodicity(12));

    GradedF2Map z4 = canonical_restriction(StabKind::Z4, StabKind::Center, {{false}});
    CHECK(rank(z4.matrix(1)) == 0);
    CHECK(rank(z4.matrix(2)) == 1);  // e2 -> t1^2
    CHECK(rank(z4.matrix(3)) == 0);

    GradedF2Map z6 = canonical_restriction(StabKind::Z6, StabKind::Center, {});
    for (int q = 0; q <= 6; ++q) CHECK(rank(z6.matrix(q)) == 1);  // 2-Sylow isomorphism
}

TEST_CASE("binary tetrahedral restrictions") {
    GradedF2Map to_z4 = canonical_restriction(StabKind::Te24, StabKind::Z4, {});
    CHECK(rank(to_z4.matrix(3)) == 0);  // b3 -> 0
    CHECK(rank(to_z4.matrix(4)) == 1);  // e4 -> e2^2
    CHECK(to_z4.commutes_with_periodicity(12));

    GradedF2Map to_q8 = canonical_restriction(StabKind::Te24, StabKind::Q8, {});
    CHECK(rank(to_q8.matrix(3)) == 1);  // split injection onto the 2-Sylow: b3 -> x3
    CHECK(rank(to_q8.matrix(4)) == 1);
    CHECK(rank(to_q8.matrix(7)) == 1);
    CHECK(to_q8.commutes_with_periodicity(12));
}

TEST_CASE("Q8 isomorphism legs have full rank in every degree") {
    // identity assignment and the other invertible degree-1 blocks
    for (auto bits : std::vector<std::vector<std::vector<bool>>>{
             {{true, false}, {false, true}},
             {{false, true}, {true, false}},
             {{false, true}, {true, true}},
             {{true, true}, {false, true}}}) {
        GradedF2Map m = canonical_restriction(StabKind::Q8, StabKind::Q8, bits);
        for (int q = 0; q <= 9; ++q) {
            F2Matrix mat = m.matrix(q);
            CHECK(mat.rows() == mat.cols());
            CHECK(rank(mat) == mat.cols());
        }
        CHECK(m.commutes_with_periodicity(12));
    }
    // identity assignment acts as the identity matrix
    GradedF2Map id = canonical_restriction(StabKind::Q8, StabKind::Q8,
                                           {{true, false}, {false, true}});
    for (int q = 0; q <= 9; ++q) CHECK(id.matrix(q) == F2Matrix::identity(id.matrix(q).rows()));
}

TEST_CASE("assignment-driven restriction maps") {
    // the printed leg: b3 -> 0, periodicity class onto the degree-4 power
    GradedF2Map m = restriction_map(StabKind::Te24, StabKind::Z4,
                                    {{"b3", "0"}, {"e4", "e2^2"}});
    CHECK(rank(m.matrix(3)) == 0);
    CHECK(rank(m.matrix(4)) == 1);

    GradedF2Map id = restriction_map(
        StabKind::Z4, StabKind::Z4, {{"b1", "b1"}, {"e2", "e2"}});
    for (int q = 0; q <= 6; ++q) CHECK(id.matrix(q) == F2Matrix::identity(1));

    GradedF2Map q8 = restriction_map(StabKind::Q8, StabKind::Q8,
                                     {{"x1", "y1"}, {"y1", "x1+y1"}, {"x2", "x2+y2"},
                                      {"y2", "x2"}, {"x3", "x3"}, {"e4", "e4"}});
    for (int q = 0; q <= 8; ++q) CHECK(rank(q8.matrix(q)) == q8.matrix(q).cols());

    CHECK_THROWS_AS(restriction_map(StabKind::Te24, StabKind::Z4, {{"b3", "0"}}),
                    std::invalid_argument);  // periodicity not covered
    CHECK_THROWS_AS(restriction_map(StabKind::Te24, StabKind::Z4,
                                    {{"b9", "0"}, {"e4", "e2^2"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(restriction_map(StabKind::Te24, StabKind::Z4,
                                    {{"b3", "zork"}, {"e4", "e2^2"}}),
                    std::invalid_argument);
}

TEST_CASE("class parsing round trip") {
    GradedF2Space q8 = GradedF2Space::table_for(StabKind::Q8);
    GradedClass c = parse_class(q8, 2, "x2+y2");
    CHECK(c.terms.size() == 2);
    CHECK(parse_class(q8, 5, "e4x1").terms == std::vector<std::pair<int, int>>{{1, 1}});
    CHECK(parse_class(q8, 3, "0").terms.empty());
    CHECK_THROWS_AS(parse_class(q8, 2, "x1"), std::invalid_argument);
}

TEST_CASE("assignment validation") {
    GradedF2Map m(GradedF2Space::table_for(StabKind::Z4),
                  GradedF2Space::table_for(StabKind::Center));
    CHECK_THROWS_AS(m.assign_generator("nope", zero_class(1)), std::invalid_argument);
    CHECK_THROWS_AS(m.assign_generator("b1", zero_class(2)), std::invalid_argument);
    CHECK_THROWS_AS(m.matrix(1), std::logic_error);  // periodicity image missing
}
