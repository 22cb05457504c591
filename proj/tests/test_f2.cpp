#include "bianchi/f2.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace bianchi;

namespace {

F2Matrix random_f2(std::mt19937_64& rng, int rows, int cols) {
    F2Matrix m(rows, cols);
    std::bernoulli_distribution bit(0.5);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, bit(rng));
    return m;
}

std::vector<std::vector<int>> dense(const F2Matrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
    return out;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, int rows, int cols, int height) {
    IntMatrix m(rows, cols);
    std::uniform_int_distribution<int> entry(-height, height);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
    return m;
}

}  // namespace

TEST_CASE("rank, kernel and cokernel on pinned inputs") {
    F2Matrix id3 = F2Matrix::identity(3);
    CHECK(rank(id3) == 3);
    CHECK(kernel_basis(id3).empty());
    CHECK(cokernel_dim(id3) == 0);

    F2Matrix zero25(2, 5);
    CHECK(rank(zero25) == 0);
    CHECK(kernel_basis(zero25).size() == 5);
    CHECK(cokernel_dim(zero25) == 2);
}

TEST_CASE("kernel vectors are kernel vectors") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        F2Matrix m = random_f2(rng, 7, 11);
        for (const auto& v : kernel_basis(m)) {
            auto image = m.apply(v);
            for (bool bit : image) CHECK_FALSE(bit);
        }
        CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == m.cols());
    }
}

TEST_CASE("rank agrees with the naive oracle and with the transpose") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; ++i) {
        F2Matrix m = random_f2(rng, 9, 6);
        CHECK(rank(m) == oracle::f2_rank(dense(m)));
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("solve finds a preimage iff one exists") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        F2Matrix m = random_f2(rng, 8, 5);
        std::vector<bool> x(5);
        for (int k = 0; k < 5; ++k) x[k] = rng() & 1;
        std::vector<bool> rhs = m.apply(x);
        std::vector<bool> sol;
        REQUIRE(solve(m, rhs, sol));
        CHECK(m.apply(sol) == rhs);
    }
}

TEST_CASE("subquotient coordinates") {
    // Z = span{e0, e1}, B = span{e0} inside F2^3
    std::vector<std::vector<bool>> z = {{true, false, false}, {false, true, false}};
    std::vector<std::vector<bool>> b = {{true, false, false}};
    Subquotient sq = make_subquotient(z, b, 3);
    CHECK(sq.dim() == 1);
    std::vector<bool> v = {true, true, false};  // e0 + e1 == e1 mod B
    auto coords = sq.coordinates(v);
    REQUIRE(coords.size() == 1);
    CHECK(coords[0]);
    CHECK_THROWS_AS(sq.coordinates(std::vector<bool>{false, false, true}), std::logic_error);
}

TEST_CASE("smith normal form on pinned inputs") {
    // diag(2,3): gcd/lcm structure gives (1, 6)
    IntMatrix d23 = IntMatrix::diagonal({2, 3}, 2, 2);
    SmithResult s = smith_normal_form(d23);
    CHECK(s.divisors == std::vector<Int>{1, 6});
    CHECK(s.rank == 2);
    CHECK(s.free_cokernel_rank == 0);

    IntMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 4;
    m.at(1, 0) = 6;
    m.at(1, 1) = 8;
    s = smith_normal_form(m);  // gcd of entries 2, |det| = 8
    CHECK(s.divisors == std::vector<Int>{2, 4});

    IntMatrix zero(3, 2);
    s = smith_normal_form(zero);
    CHECK(s.divisors.empty());
    CHECK(s.free_cokernel_rank == 3);
}

TEST_CASE("smith divisors multiply to the determinant") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 60; ++i) {
        IntMatrix m = random_int_matrix(rng, 4, 4, 6);
        // determinant by cofactor expansion
        auto det4 = [&]() {
            auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
                return m.at(r0, c0) * (m.at(r1, c1) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c1)) -
                       m.at(r0, c1) * (m.at(r1, c0) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c0)) +
                       m.at(r0, c2) * (m.at(r1, c0) * m.at(r2, c1) - m.at(r1, c1) * m.at(r2, c0));
            };
            Int d = 0;
            int sign = 1;
            for (int c = 0; c < 4; ++c) {
                int cols[3], k = 0;
                for (int cc = 0; cc < 4; ++cc)
                    if (cc != c) cols[k++] = cc;
                d += sign * m.at(0, c) * det3(1, 2, 3, cols[0], cols[1], cols[2]);
                sign = -sign;
            }
            return d;
        };
        Int det = det4();
        if (det == 0) continue;
        SmithResult s = smith_normal_form(m);
        Int prod = 1;
        for (const Int& d : s.divisors) prod *= d;
        CHECK(prod == abs(det));
    }
}

TEST_CASE("f2 rank equals the odd divisor count") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 60; ++i) {
        IntMatrix m = random_int_matrix(rng, 5, 7, 9);
        SmithResult s = smith_normal_form(m);
        int odd = 0;
        for (const Int& d : s.divisors)
            if (d % 2 != 0) ++odd;
        F2Matrix f(m.rows, m.cols);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) f.set(r, c, m.at(r, c) % 2 != 0);
        CHECK(rank(f) == odd);
    }
}

TEST_CASE("matrix product matches naive evaluation") {
    std::mt19937_64 rng(26);
    F2Matrix a = random_f2(rng, 6, 7), b = random_f2(rng, 7, 5);
    F2Matrix ab = a * b;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 5; ++c) {
            bool acc = false;
            for (int k = 0; k < 7; ++k) acc ^= (a.get(r, k) && b.get(k, c));
            CHECK(ab.get(r, c) == acc);
        }
}
