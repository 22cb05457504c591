#include "bianchi/f2.hpp"

#include <sstream>
#include <stdexcept>

namespace bianchi {

F2Matrix::F2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
      data_(static_cast<size_t>(rows) * ((cols + 63) / 64), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("F2Matrix: negative dimension");
}

F2Matrix F2Matrix::identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows, int cols) {
    F2Matrix m(static_cast<int>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c)
            m.set(static_cast<int>(r), static_cast<int>(c), (rows[r][c] & 1) != 0);
    return m;
}

bool F2Matrix::get(int r, int c) const {
    return (word(r, c >> 6) >> (c & 63)) & 1;
}

void F2Matrix::set(int r, int c, bool v) {
    uint64_t& w = data_[static_cast<size_t>(r) * words_per_row_ + (c >> 6)];
    uint64_t bit = uint64_t(1) << (c & 63);
    if (v)
        w |= bit;
    else
        w &= ~bit;
}

void F2Matrix::xor_rows(int dst, int src) {
    for (int w = 0; w < words_per_row_; ++w)
        data_[static_cast<size_t>(dst) * words_per_row_ + w] ^=
            data_[static_cast<size_t>(src) * words_per_row_ + w];
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("F2Matrix::*: shape mismatch");
    F2Matrix res(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k)
            if (get(r, k))
                for (int w = 0; w < res.words_per_row_; ++w)
                    res.data_[static_cast<size_t>(r) * res.words_per_row_ + w] ^=
                        o.data_[static_cast<size_t>(k) * o.words_per_row_ + w];
    return res;
}

F2Matrix F2Matrix::operator+(const F2Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("F2Matrix::+: shape mismatch");
    F2Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] ^= o.data_[i];
    return out;
}

bool F2Matrix::is_zero() const {
    for (uint64_t w : data_)
        if (w) return false;
    return true;
}

std::vector<bool> F2Matrix::apply(const std::vector<bool>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("F2Matrix::apply: length mismatch");
    std::vector<bool> out(rows_, false);
    for (int r = 0; r < rows_; ++r) {
        bool acc = false;
        for (int c = 0; c < cols_; ++c) acc ^= (get(r, c) && v[c]);
        out[r] = acc;
    }
    return out;
}

F2Matrix F2Matrix::hcat(const F2Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("F2Matrix::hcat: row mismatch");
    F2Matrix out(rows_, cols_ + o.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out.set(r, c, get(r, c));
        for (int c = 0; c < o.cols_; ++c) out.set(r, cols_ + c, o.get(r, c));
    }
    return out;
}

std::string F2Matrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

namespace {

// Row echelon in place; returns pivot column per eliminated row.
std::vector<int> echelonize(F2Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m.get(r, col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row) {
            // swap via three xors
            m.xor_rows(row, pivot);
            m.xor_rows(pivot, row);
            m.xor_rows(row, pivot);
        }
        for (int r = 0; r < m.rows(); ++r)
            if (r != row && m.get(r, col)) m.xor_rows(r, row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(const F2Matrix& m) {
    F2Matrix copy = m;
    return static_cast<int>(echelonize(copy).size());
}

int nullity(const F2Matrix& m) { return m.cols() - rank(m); }
int cokernel_dim(const F2Matrix& m) { return m.rows() - rank(m); }

std::vector<std::vector<bool>> kernel_basis(const F2Matrix& m) {
    F2Matrix copy = m;
    std::vector<int> pivots = echelonize(copy);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<std::vector<bool>> basis;
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<bool> v(m.cols(), false);
        v[free_col] = true;
        for (size_t i = 0; i < pivots.size(); ++i)
            if (copy.get(static_cast<int>(i), free_col)) v[pivots[i]] = true;
        basis.push_back(std::move(v));
    }
    return basis;
}

F2Matrix columns_matrix(const std::vector<std::vector<bool>>& columns, int dim) {
    F2Matrix m(dim, static_cast<int>(columns.size()));
    for (size_t c = 0; c < columns.size(); ++c) {
        if (static_cast<int>(columns[c].size()) != dim)
            throw std::invalid_argument("columns_matrix: length mismatch");
        for (int r = 0; r < dim; ++r) m.set(r, static_cast<int>(c), columns[c][r]);
    }
    return m;
}

bool solve(const F2Matrix& m, const std::vector<bool>& rhs, std::vector<bool>& out) {
    if (static_cast<int>(rhs.size()) != m.rows())
        throw std::invalid_argument("solve: rhs length mismatch");
    F2Matrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols(), rhs[r]);
    }
    std::vector<int> pivots = echelonize(aug);
    out.assign(m.cols(), false);
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == m.cols()) return false;  // inconsistent row
        out[pivots[i]] = aug.get(static_cast<int>(i), m.cols());
    }
    return true;
}

std::vector<bool> Subquotient::coordinates(const std::vector<bool>& v) const {
    std::vector<bool> sol;
    if (!solve(coordinate_solver, v, sol))
        throw std::logic_error("Subquotient::coordinates: vector is outside the subspace");
    return std::vector<bool>(sol.begin() + b_dim, sol.end());
}

Subquotient make_subquotient(const std::vector<std::vector<bool>>& z_basis,
                             const std::vector<std::vector<bool>>& b_basis, int ambient) {
    Subquotient sq;
    sq.ambient = ambient;

    // reduce B to an independent spanning set
    std::vector<std::vector<bool>> b_indep;
    for (const auto& v : b_basis) {
        F2Matrix test = columns_matrix(b_indep, ambient);
        std::vector<bool> sol;
        if (!b_indep.empty() && solve(test, v, sol)) continue;
        if (b_indep.empty()) {
            bool nonzero = false;
            for (bool x : v) nonzero |= x;
            if (!nonzero) continue;
        }
        b_indep.push_back(v);
    }
    sq.b_dim = static_cast<int>(b_indep.size());

    // greedily extend by z-vectors independent modulo B
    std::vector<std::vector<bool>> all = b_indep;
    for (const auto& v : z_basis) {
        F2Matrix test = columns_matrix(all, ambient);
        std::vector<bool> sol;
        if (!all.empty() && solve(test, v, sol)) continue;
        if (all.empty()) {
            bool nonzero = false;
            for (bool x : v) nonzero |= x;
            if (!nonzero) continue;
        }
        all.push_back(v);
        sq.reps.push_back(v);
    }
    sq.coordinate_solver = columns_matrix(all, ambient);
    return sq;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d, int rows, int cols) {
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix::*: shape mismatch");
    IntMatrix out(rows, o.cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < cols; ++k) {
            if (at(r, k) == 0) continue;
            for (int c = 0; c < o.cols; ++c) out.at(r, c) += at(r, k) * o.at(k, c);
        }
    return out;
}

namespace {

struct SnfWork {
    IntMatrix m, u, v;  // invariant: u * original * v == m

    void swap_rows(int i, int j) {
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    void add_row(int dst, int src, const Int& k) {  // row dst += k * row src
        for (int c = 0; c < m.cols; ++c) m.at(dst, c) += k * m.at(src, c);
        for (int c = 0; c < u.cols; ++c) u.at(dst, c) += k * u.at(src, c);
    }
    void add_col(int dst, int src, const Int& k) {
        for (int r = 0; r < m.rows; ++r) m.at(r, dst) += k * m.at(r, src);
        for (int r = 0; r < v.rows; ++r) v.at(r, dst) += k * v.at(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    }
};

// Smallest nonzero |entry| in the trailing block, or (-1,-1).
std::pair<int, int> min_entry(const IntMatrix& m, int s) {
    std::pair<int, int> best(-1, -1);
    Int best_abs = 0;
    for (int r = s; r < m.rows; ++r)
        for (int c = s; c < m.cols; ++c) {
            if (m.at(r, c) == 0) continue;
            Int a = abs(m.at(r, c));
            if (best.first < 0 || a < best_abs) {
                best = {r, c};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    SnfWork w{input, IntMatrix::diagonal(std::vector<Int>(input.rows, 1), input.rows, input.rows),
              IntMatrix::diagonal(std::vector<Int>(input.cols, 1), input.cols, input.cols)};

    int nmin = std::min(input.rows, input.cols);
    for (int s = 0; s < nmin; ++s) {
        for (;;) {
            auto [pr, pc] = min_entry(w.m, s);
            if (pr < 0) goto done;  // trailing block is zero
            if (pr != s) w.swap_rows(s, pr);
            if (pc != s) w.swap_cols(s, pc);
            if (w.m.at(s, s) < 0) w.negate_row(s);

            bool clean = true;
            for (int r = s + 1; r < w.m.rows; ++r)
                if (w.m.at(r, s) != 0) {
                    w.add_row(r, s, -(w.m.at(r, s) / w.m.at(s, s)));
                    if (w.m.at(r, s) != 0) clean = false;
                }
            for (int c = s + 1; c < w.m.cols; ++c)
                if (w.m.at(s, c) != 0) {
                    w.add_col(c, s, -(w.m.at(s, c) / w.m.at(s, s)));
                    if (w.m.at(s, c) != 0) clean = false;
                }
            if (!clean) continue;

            // pivot divides every entry of the trailing block, else fold the
            // offending row in and restart the pivot hunt
            bool divides = true;
            for (int r = s + 1; r < w.m.rows && divides; ++r)
                for (int c = s + 1; c < w.m.cols && divides; ++c)
                    if (w.m.at(r, c) % w.m.at(s, s) != 0) {
                        w.add_row(s, r, 1);
                        divides = false;
                    }
            if (divides) break;
        }
    }
done:

    SmithResult res;
    for (int i = 0; i < nmin; ++i)
        if (w.m.at(i, i) != 0) res.divisors.push_back(w.m.at(i, i));
    res.rank = static_cast<int>(res.divisors.size());
    res.free_cokernel_rank = input.rows - res.rank;
    res.left = w.u;
    res.right = w.v;

    IntMatrix check = w.u * input * w.v;
    if (!(check == w.m))
        throw std::logic_error("smith_normal_form: transform validation failed");
    for (size_t i = 0; i + 1 < res.divisors.size(); ++i)
        if (res.divisors[i + 1] % res.divisors[i] != 0)
            throw std::logic_error("smith_normal_form: divisibility chain violated");
    return res;
}

}  // namespace bianchi
