#include "ck/adjacency.hpp"

#include "ck/errors.hpp"

namespace ck {

std::string show_word(const Word& w) {
    if (w.empty()) return "()";
    std::string s;
    for (Letter l : w) {
        if (!s.empty() && l >= 9) s += ',';
        s += std::to_string(int(l) + 1);
    }
    return s;
}

AdjacencyMatrix AdjacencyMatrix::validate(const std::vector<std::vector<int>>& raw) {
    const int n = static_cast<int>(raw.size());
    if (n == 0) fail("EmptyMatrix", "matrix has no rows");
    if (n > 255) fail("MatrixTooLarge", "alphabet capped at 255 letters");
    AdjacencyMatrix A;
    A.n_ = n;
    A.entries_.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(raw[i].size()) != n)
            fail("NotSquare", "row " + std::to_string(i + 1) + " has length " +
                                  std::to_string(raw[i].size()));
        for (int j = 0; j < n; ++j) {
            const int e = raw[i][j];
            if (e != 0 && e != 1)
                fail("NonBinaryEntry", "entry (" + std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + ") = " + std::to_string(e));
            A.entries_[static_cast<size_t>(i) * n + j] = e;
        }
    }
    A.row_sums_.assign(n, 0);
    A.col_sums_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A.entries_[static_cast<size_t>(i) * n + j]) {
                ++A.row_sums_[i];
                ++A.col_sums_[j];
            }
    for (int i = 0; i < n; ++i)
        if (A.row_sums_[i] == 0) fail("ZeroRow", "row " + std::to_string(i + 1) + " is zero");
    for (int j = 0; j < n; ++j)
        if (A.col_sums_[j] == 0) fail("ZeroColumn", "column " + std::to_string(j + 1) + " is zero");
    return A;
}

AdjacencyMatrix AdjacencyMatrix::transposed() const {
    std::vector<std::vector<int>> raw(n_, std::vector<int>(n_, 0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) raw[j][i] = entries_[static_cast<size_t>(i) * n_ + j];
    return validate(raw);
}

bool AdjacencyMatrix::word_admissible(const Word& w) const {
    for (Letter l : w)
        if (l >= n_) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (!at(w[i], w[i + 1])) return false;
    return true;
}

std::vector<Letter> AdjacencyMatrix::followers(Letter i) const {
    std::vector<Letter> out;
    for (int j = 0; j < n_; ++j)
        if (at(i, static_cast<Letter>(j))) out.push_back(static_cast<Letter>(j));
    return out;
}

bool AdjacencyMatrix::irreducible() const {
    // Floyd-Warshall reachability; alphabets are tiny.
    std::vector<char> reach(static_cast<size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) reach[static_cast<size_t>(i) * n_ + j] = at(i, j);
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (reach[static_cast<size_t>(i) * n_ + k] && reach[static_cast<size_t>(k) * n_ + j])
                    reach[static_cast<size_t>(i) * n_ + j] = 1;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!reach[static_cast<size_t>(i) * n_ + j]) return false;
    return true;
}

AdjacencyMatrix full_shift(int n) {
    return AdjacencyMatrix::validate(std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

AdjacencyMatrix suq2_matrix() { return AdjacencyMatrix::validate({{1, 1}, {0, 1}}); }

AdjacencyMatrix free_group_matrix(int d) {
    const int n = 2 * d;
    std::vector<std::vector<int>> raw(n, std::vector<int>(n, 1));
    for (int b = 0; b < d; ++b) {
        raw[2 * b][2 * b + 1] = 0; // generator followed by its inverse is forbidden
        raw[2 * b + 1][2 * b] = 0;
    }
    return AdjacencyMatrix::validate(raw);
}

AdjacencyMatrix ad_matrix(int d) {
    const int n = 2 * d;
    std::vector<std::vector<int>> raw(n, std::vector<int>(n, 1));
    for (int i = 0; i < n; ++i) raw[i][i] = 0;
    return AdjacencyMatrix::validate(raw);
}

} // namespace ck
