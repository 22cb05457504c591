#pragma once

#include "bianchi/rational.hpp"

#include <cstdint>
#include <vector>

namespace bianchi {

// Dense F2 matrix with 64-bit packed rows.
class F2Matrix {
  public:
    F2Matrix() : rows_(0), cols_(0), words_per_row_(0) {}
    F2Matrix(int rows, int cols);

    static F2Matrix identity(int n);
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    void xor_rows(int dst, int src);  // row dst ^= row src

    F2Matrix transposed() const;
    F2Matrix operator*(const F2Matrix& o) const;
    F2Matrix operator+(const F2Matrix& o) const;
    bool is_zero() const;
    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

    std::vector<bool> apply(const std::vector<bool>& v) const;  // matrix * column

    // Horizontal concatenation [this | o].
    F2Matrix hcat(const F2Matrix& o) const;

    std::string to_string() const;

  private:
    int rows_, cols_, words_per_row_;
    std::vector<uint64_t> data_;
    uint64_t word(int r, int w) const { return data_[static_cast<size_t>(r) * words_per_row_ + w]; }
};

int rank(const F2Matrix& m);
int nullity(const F2Matrix& m);                // cols - rank
int cokernel_dim(const F2Matrix& m);           // rows - rank
std::vector<std::vector<bool>> kernel_basis(const F2Matrix& m);

// Columns of `vectors` spanning a subspace; returns a maximal subset of
// column indices whose images are independent.
F2Matrix columns_matrix(const std::vector<std::vector<bool>>& columns, int dim);

// Solve m x = rhs over F2; empty optional-like flag via bool return.
bool solve(const F2Matrix& m, const std::vector<bool>& rhs, std::vector<bool>& out);

// Subquotient Z/B of F2^n with chosen basis representatives, supporting
// coordinate extraction of ambient vectors that lie in Z.
struct Subquotient {
    int ambient = 0;
    std::vector<std::vector<bool>> reps;      // lifts of a basis of Z/B
    F2Matrix coordinate_solver;               // [B | reps] as columns

    int dim() const { return static_cast<int>(reps.size()); }
    int b_dim = 0;

    // coordinates of v in the rep basis; throws if v is not in Z + B span
    std::vector<bool> coordinates(const std::vector<bool>& v) const;
};

Subquotient make_subquotient(const std::vector<std::vector<bool>>& z_basis,
                             const std::vector<std::vector<bool>>& b_basis, int ambient);

// Integer matrix with arbitrary-precision entries.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}

    Int& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    static IntMatrix diagonal(const std::vector<Int>& d, int rows, int cols);
    IntMatrix operator*(const IntMatrix& o) const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

// Smith normal form D = U M V with U, V unimodular and the diagonal divisors
// satisfying d1 | d2 | ... . Divisors are reported non-negative; the
// transforms are validated by re-multiplication before returning.
struct SmithResult {
    std::vector<Int> divisors;  // nonzero diagonal entries, divisibility chain
    int rank = 0;               // number of nonzero divisors
    int free_cokernel_rank = 0; // rows - rank
    IntMatrix left, right;      // U, V with U*M*V = diag(divisors)
};

SmithResult smith_normal_form(const IntMatrix& m);

}  // namespace bianchi
