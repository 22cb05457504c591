#include "bianchi/mv.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bianchi {

std::vector<LESRow> degreewise_kernel_cokernel(const ComparisonResult& cmp, int n_max) {
    if (n_max > cmp.q_max)
        throw std::out_of_range("degreewise_kernel_cokernel: q_max too small for degree " +
                                std::to_string(n_max));
    std::vector<LESRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        LESRow row{n, 0, 0};
        for (int p = 0; p <= 2 && p <= n; ++p) {
            row.kernel_dim += cmp.at(p, n - p).kernel_dim;
            row.cokernel_dim += cmp.at(p, n - p).cokernel_dim;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> solve_les(const std::vector<LESRow>& rows) {
    std::vector<int> dims;
    for (size_t n = 0; n < rows.size(); ++n) {
        if (rows[n].degree != static_cast<int>(n))
            throw std::invalid_argument("solve_les: rows must cover degrees 0..N in order");
        if (n == 0)
            dims.push_back(1);
        else
            dims.push_back(rows[n - 1].cokernel_dim + rows[n].kernel_dim);
    }
    return dims;
}

namespace {

// smallest n0 with dims[n] == dims[n+d] for every n0 <= n <= N-d-1
int periodic_tail_start(const std::vector<int>& dims, int d) {
    int N = static_cast<int>(dims.size());
    int start = N;
    for (int n = N - d - 1; n >= 0; --n) {
        if (dims[n] != dims[n + d]) break;
        start = n;
    }
    return start;
}

// the tail must cover two periods up to the unavoidable edge of the window
bool tail_long_enough(const std::vector<int>& dims, int d, int start) {
    return start + 2 * d - 1 <= static_cast<int>(dims.size());
}

}  // namespace

FreeModuleVerdict free_module_check(const std::vector<int>& dims, int generator_degree,
                                    const std::vector<int>& claimed_degrees) {
    int d = generator_degree;
    int N = static_cast<int>(dims.size());
    if (N < 2 * d)
        throw std::invalid_argument("free_module_check: need at least two periods of dims");
    if (!tail_long_enough(dims, d, periodic_tail_start(dims, d)))
        throw std::invalid_argument("free_module_check: dims are not eventually periodic");

    FreeModuleVerdict v;
    v.numerator.resize(N);
    for (int n = 0; n < N; ++n) v.numerator[n] = dims[n] - (n >= d ? dims[n - d] : 0);
    while (!v.numerator.empty() && v.numerator.back() == 0) v.numerator.pop_back();

    v.ok = true;
    for (size_t n = 0; n < v.numerator.size(); ++n) {
        if (v.numerator[n] < 0) {
            v.ok = false;
            v.reason = "negative coefficient at degree " + std::to_string(n);
        }
        for (int k = 0; k < v.numerator[n]; ++k) v.basis_degrees.push_back(static_cast<int>(n));
    }
    if (v.ok) {
        // claimed degrees must embed in the computed multiset
        std::map<int, int> have;
        for (int deg : v.basis_degrees) ++have[deg];
        for (int deg : claimed_degrees) {
            if (--have[deg] < 0) {
                v.ok = false;
                v.reason = "claimed basis degree " + std::to_string(deg) + " is not available";
                break;
            }
        }
    }
    return v;
}

PoincareSeries poincare_series(const std::vector<int>& dims) {
    int N = static_cast<int>(dims.size());
    if (N < 8) throw std::invalid_argument("poincare_series: need at least two periods");
    if (!tail_long_enough(dims, 4, periodic_tail_start(dims, 4)))
        throw std::invalid_argument("poincare_series: period-4 tail not detected");

    PoincareSeries s;
    s.numerator.resize(N);
    for (int n = 0; n < N; ++n) s.numerator[n] = dims[n] - (n >= 4 ? dims[n - 4] : 0);
    while (!s.numerator.empty() && s.numerator.back() == 0) s.numerator.pop_back();

    // round-trip
    std::vector<int> back = s.coefficients(N - 1);
    for (int n = 0; n < N; ++n)
        if (back[n] != dims[n])
            throw std::logic_error("poincare_series: round-trip mismatch");
    return s;
}

std::vector<int> PoincareSeries::coefficients(int n_max) const {
    std::vector<int> out(n_max + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
        int c = n < static_cast<int>(numerator.size()) ? numerator[n] : 0;
        out[n] = c + (n >= period ? out[n - period] : 0);
    }
    return out;
}

std::string PoincareSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    os << "(";
    for (size_t n = 0; n < numerator.size(); ++n) {
        if (numerator[n] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (numerator[n] != 1 || n == 0) os << numerator[n];
        if (n == 1)
            os << (numerator[n] != 1 ? "*t" : "t");
        else if (n > 1)
            os << (numerator[n] != 1 ? "*t^" : "t^") << n;
    }
    if (first) os << "0";
    os << ") / (1 - t^" << period << ")";
    return os.str();
}

}  // namespace bianchi
