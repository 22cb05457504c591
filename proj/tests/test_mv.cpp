#include "bianchi/mv.hpp"

#include <doctest.h>

using namespace bianchi;

namespace {

// the degree-wise kernel/cokernel table, frozen from the comparison
std::vector<LESRow> frozen_rows(int n_max) {
    std::vector<LESRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        if (n == 0)
            rows.push_back({0, 1, 0});
        else if (n == 1)
            rows.push_back({1, 0, 0});
        else
            switch (n % 4) {
                case 2: rows.push_back({n, 1, 1}); break;
                case 3: rows.push_back({n, 3, 1}); break;
                case 0: rows.push_back({n, 2, 1}); break;
                case 1: rows.push_back({n, 0, 1}); break;
            }
    }
    return rows;
}

}  // namespace

TEST_CASE("the long exact sequence solves to the stated dimensions") {
    std::vector<int> dims = solve_les(frozen_rows(9));
    CHECK(dims == std::vector<int>{1, 0, 1, 4, 3, 1, 2, 4, 3, 1});
    // independent recurrence evaluation
    auto rows = frozen_rows(9);
    for (int n = 1; n <= 9; ++n)
        CHECK(dims[n] == rows[n - 1].cokernel_dim + rows[n].kernel_dim);
}

TEST_CASE("solve_les rejects out-of-order rows") {
    std::vector<LESRow> rows = frozen_rows(3);
    std::swap(rows[1], rows[2]);
    CHECK_THROWS_AS(solve_les(rows), std::invalid_argument);
}

TEST_CASE("free module check on the computed dimensions") {
    std::vector<int> dims = solve_les(frozen_rows(9));
    FreeModuleVerdict v = free_module_check(dims, 4, {2, 3, 3, 3, 3, 4, 4, 5, 6});
    CHECK(v.ok);
    CHECK(v.numerator == std::vector<int>{1, 0, 1, 4, 2, 1, 1});
    CHECK(v.basis_degrees == std::vector<int>{0, 2, 3, 3, 3, 3, 4, 4, 5, 6});
}

TEST_CASE("free module check on the polynomial ring itself") {
    std::vector<int> dims = {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
    FreeModuleVerdict v = free_module_check(dims, 4, {});
    CHECK(v.ok);
    CHECK(v.basis_degrees == std::vector<int>{0});
}

TEST_CASE("perturbing one dimension flips the verdict") {
    std::vector<int> dims = solve_les(frozen_rows(9));
    dims[5] = 0;  // drop the degree-5 class
    dims[9] = 0;  // and its periodic continuation
    FreeModuleVerdict v = free_module_check(dims, 4, {2, 3, 3, 3, 3, 4, 4, 5, 6});
    CHECK_FALSE(v.ok);
    CHECK(v.reason.find("5") != std::string::npos);

    // breaking periodicity outright violates the precondition instead
    std::vector<int> broken = solve_les(frozen_rows(9));
    broken[5] = 0;
    CHECK_THROWS_AS(free_module_check(broken, 4, {}), std::invalid_argument);
}

TEST_CASE("verdict is stable under appending exact periods") {
    std::vector<int> dims = solve_les(frozen_rows(9));
    std::vector<int> longer = dims;
    for (int n = 10; n <= 17; ++n) longer.push_back(longer[n - 4]);
    FreeModuleVerdict a = free_module_check(dims, 4, {2, 3, 3, 3, 3, 4, 4, 5, 6});
    FreeModuleVerdict b = free_module_check(longer, 4, {2, 3, 3, 3, 3, 4, 4, 5, 6});
    CHECK(a.ok == b.ok);
    CHECK(a.numerator == b.numerator);
    CHECK(a.basis_degrees == b.basis_degrees);
}

TEST_CASE("poincare series of the amalgam") {
    std::vector<int> dims = solve_les(frozen_rows(9));
    PoincareSeries s = poincare_series(dims);
    CHECK(s.numerator == std::vector<int>{1, 0, 1, 4, 2, 1, 1});
    CHECK(s.coefficients(9) == dims);
    CHECK(s.to_string() == "(1 + t^2 + 4*t^3 + 2*t^4 + t^5 + t^6) / (1 - t^4)");
}

TEST_CASE("poincare series of an all-ones sequence") {
    std::vector<int> ones(12, 1);
    PoincareSeries s = poincare_series(ones);
    CHECK(s.numerator == std::vector<int>{1, 1, 1, 1});  // geometric series identity
    CHECK(s.coefficients(11) == ones);
}

TEST_CASE("poincare series of the congruence dimensions") {
    std::vector<int> dims = {1, 4, 6, 6, 5, 5, 6, 6, 5, 5};
    PoincareSeries s = poincare_series(dims);
    CHECK(s.numerator == std::vector<int>{1, 4, 6, 6, 4, 1});
}

TEST_CASE("non-periodic input is rejected") {
    std::vector<int> dims = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK_THROWS_AS(poincare_series(dims), std::invalid_argument);
    CHECK_THROWS_AS(free_module_check(dims, 4, {}), std::invalid_argument);
    CHECK_THROWS_AS(free_module_check({1, 0, 0}, 4, {}), std::invalid_argument);
}

TEST_CASE("degree range guard") {
    ComparisonResult cmp;
    cmp.q_max = 5;
    cmp.cells.assign(3, std::vector<ComparisonCell>(6));
    CHECK_THROWS_AS(degreewise_kernel_cokernel(cmp, 9), std::out_of_range);
    CHECK(degreewise_kernel_cokernel(cmp, 5).size() == 6);
}
