#include "ck/snf.hpp"

#include <algorithm>

#include "ck/errors.hpp"

namespace ck {

IntMat int_identity(size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, std::vector<Int>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

IntMat int_transpose(const IntMat& a) {
    if (a.empty()) return {};
    IntMat c(a[0].size(), std::vector<Int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) c[j][i] = a[i][j];
    return c;
}

IntMat int_sub(const IntMat& a, const IntMat& b) {
    IntMat c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) c[i][j] -= b[i][j];
    return c;
}

IntMat int_pow(const IntMat& a, int e) {
    IntMat r = int_identity(a.size());
    for (int i = 0; i < e; ++i) r = int_mul(r, a);
    return r;
}

Int int_det(const IntMat& a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

size_t int_rank(const IntMat& a) {
    auto d = snf(a).diagonal();
    size_t r = 0;
    for (const Int& x : d)
        if (x != 0) ++r;
    return r;
}

std::vector<Int> SNFResult::diagonal() const {
    std::vector<Int> d;
    const size_t n = std::min(D.size(), D.empty() ? 0 : D[0].size());
    for (size_t i = 0; i < n; ++i) d.push_back(D[i][i]);
    return d;
}

namespace {

void swap_rows(IntMat& m, IntMat& u, size_t a, size_t b) {
    std::swap(m[a], m[b]);
    std::swap(u[a], u[b]);
}
void swap_cols(IntMat& m, IntMat& v, size_t a, size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
}
// row[a] -= q * row[b]
void row_op(IntMat& m, IntMat& u, size_t a, size_t b, const Int& q) {
    for (size_t j = 0; j < m[a].size(); ++j) m[a][j] -= q * m[b][j];
    for (size_t j = 0; j < u[a].size(); ++j) u[a][j] -= q * u[b][j];
}
// col[a] -= q * col[b]
void col_op(IntMat& m, IntMat& v, size_t a, size_t b, const Int& q) {
    for (auto& row : m) row[a] -= q * row[b];
    for (auto& row : v) row[a] -= q * row[b];
}

} // namespace

SNFResult snf(const IntMat& M) {
    const size_t rows = M.size();
    const size_t cols = rows == 0 ? 0 : M[0].size();
    SNFResult r{M, int_identity(rows), int_identity(cols)};
    IntMat& m = r.D;

    const size_t steps = std::min(rows, cols);
    for (size_t t = 0; t < steps; ++t) {
        // pivot: smallest nonzero |entry| in the trailing block, row-major ties
        size_t pi = t, pj = t;
        Int best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                Int a = abs(m[i][j]);
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break; // trailing block zero
        if (pi != t) swap_rows(m, r.U, pi, t);
        if (pj != t) swap_cols(m, r.V, pj, t);

        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                row_op(m, r.U, i, t, q);
                if (m[i][t] != 0) { // remainder strictly smaller: re-pivot
                    swap_rows(m, r.U, i, t);
                    again = true;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                col_op(m, r.V, j, t, q);
                if (m[t][j] != 0) {
                    swap_cols(m, r.V, j, t);
                    again = true;
                }
            }
        }
        // divisibility sweep: if some trailing entry is not divisible by the
        // pivot, fold its row in and redo this position
        bool redo = false;
        for (size_t i = t + 1; i < rows && !redo; ++i)
            for (size_t j = t + 1; j < cols && !redo; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    row_op(m, r.U, t, i, Int(-1)); // row t += row i
                    redo = true;
                }
        if (redo) {
            --t;
            continue;
        }
        if (m[t][t] < 0) {
            for (size_t j = 0; j < cols; ++j) m[t][j] = -m[t][j];
            for (size_t j = 0; j < rows; ++j) r.U[t][j] = -r.U[t][j];
        }
    }
    return r;
}

IntMat column_lattice_basis(const IntMat& M) {
    const size_t rows = M.size();
    if (rows == 0) return {};
    // Column Hermite reduction: gcd out along each row in turn.
    IntMat m = int_transpose(M); // work on rows = original columns
    size_t piv = 0;
    for (size_t col = 0; col < rows && piv < m.size(); ++col) {
        for (;;) {
            size_t best = m.size();
            Int bv = 0;
            for (size_t i = piv; i < m.size(); ++i)
                if (m[i][col] != 0 && (bv == 0 || abs(m[i][col]) < bv)) {
                    bv = abs(m[i][col]);
                    best = i;
                }
            if (best == m.size()) break; // column clear
            std::swap(m[piv], m[best]);
            bool clear = true;
            for (size_t i = piv + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                Int q = m[i][col] / m[piv][col];
                for (size_t j = 0; j < rows; ++j) m[i][j] -= q * m[piv][j];
                if (m[i][col] != 0) clear = false;
            }
            if (clear) {
                ++piv;
                break;
            }
        }
    }
    m.resize(piv); // nonzero rows form the basis
    return int_transpose(m);
}

std::string FGAbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank > 0) s += "Z^" + std::to_string(free_rank);
    for (const Int& d : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + d.str());
    return s;
}

FGAbelianGroup cokernel(const IntMat& M) {
    FGAbelianGroup g;
    if (M.empty()) return g;
    auto d = snf(M).diagonal();
    size_t nonzero = 0;
    for (const Int& x : d)
        if (x != 0) {
            ++nonzero;
            if (x >= 2) g.torsion.push_back(x);
        }
    g.free_rank = M.size() - nonzero;
    return g;
}

size_t kernel_rank(const IntMat& M) {
    if (M.empty()) return 0;
    auto d = snf(M).diagonal();
    size_t nonzero = 0;
    for (const Int& x : d)
        if (x != 0) ++nonzero;
    return M[0].size() - nonzero;
}

} // namespace ck
