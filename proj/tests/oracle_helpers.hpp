#pragma once

// Independent oracles for cross-checking the library: a naive F2 eliminator,
// a factor-out-2 rational valuation, and deterministic sample generators.
// These deliberately avoid the library's own linear algebra.

#include "bianchi/mat2.hpp"

#include <random>
#include <vector>

namespace oracle {

// naive Gaussian elimination rank over F2 on 0/1 entries
inline int f2_rank(std::vector<std::vector<int>> m) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] % 2) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = 0; r < rows; ++r)
            if (r != rank && (m[r][c] % 2))
                for (int k = 0; k < cols; ++k) m[r][k] = (m[r][k] + m[rank][k]) % 2;
        ++rank;
    }
    return rank;
}

// 2-adic valuation of a rational by repeated division
inline long rational_v2(bianchi::Rational q) {
    if (q == 0) throw std::domain_error("oracle v2 of zero");
    long v = 0;
    bianchi::Int n = bianchi::numerator(q), d = bianchi::denominator(q);
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    while (d % 2 == 0) {
        d /= 2;
        --v;
    }
    return v;
}

inline bianchi::Rational random_rational(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> num(-height, height);
    std::uniform_int_distribution<int> den(1, height);
    return bianchi::Rational(num(rng), den(rng));
}

inline bianchi::QuadElement random_quad(std::mt19937_64& rng, int height) {
    return bianchi::QuadElement(random_rational(rng, height), random_rational(rng, height));
}

inline bianchi::QuadElement random_nonzero_quad(std::mt19937_64& rng, int height) {
    for (;;) {
        bianchi::QuadElement x = random_quad(rng, height);
        if (!x.is_zero()) return x;
    }
}

inline bianchi::Mat2 random_gamma0_word(std::mt19937_64& rng, int max_len) {
    using namespace bianchi;
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

}  // namespace oracle
