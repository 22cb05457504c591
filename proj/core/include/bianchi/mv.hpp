#pragma once

#include "bianchi/spectral.hpp"

#include <string>
#include <vector>

namespace bianchi {

// Degree-wise kernel and cokernel dimensions of (i*, j*) on full group
// cohomology, folded from the spectral comparison.
struct LESRow {
    int degree = 0;
    int kernel_dim = 0;
    int cokernel_dim = 0;
};

std::vector<LESRow> degreewise_kernel_cokernel(const ComparisonResult& cmp, int n_max);

// dim H^n of the amalgam from the split long exact sequence:
// H^0 = F2 and dim H^n = coker(n-1) + ker(n) for n >= 1.
std::vector<int> solve_les(const std::vector<LESRow>& rows);

// Free-module test over a polynomial class of the given degree: the verdict
// holds iff (1 - t^d) P(t) is a polynomial with non-negative coefficients
// and the claimed basis degrees embed into the computed degree multiset.
struct FreeModuleVerdict {
    bool ok = false;
    std::vector<int> numerator;      // coefficients of (1 - t^d) P(t)
    std::vector<int> basis_degrees;  // multiset read off the numerator
    std::string reason;
};

FreeModuleVerdict free_module_check(const std::vector<int>& dims, int generator_degree,
                                    const std::vector<int>& claimed_degrees);

// Rational form numerator / (1 - t^4); requires a detected period-4 tail over
// at least two periods.
struct PoincareSeries {
    std::vector<int> numerator;
    int period = 4;

    std::string to_string() const;
    std::vector<int> coefficients(int n_max) const;  // round-trip expansion
};

PoincareSeries poincare_series(const std::vector<int>& dims);

}  // namespace bianchi
