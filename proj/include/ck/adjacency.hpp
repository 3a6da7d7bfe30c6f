#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ck {

// A letter is 0-based internally; all I/O and printing is 1-based.
using Letter = std::uint8_t;

// A finite word over the alphabet {0,..,N-1}. The empty vector is the empty
// word. Admissibility relative to a matrix is checked where words enter the
// library, not carried inside the type.
using Word = std::vector<Letter>;

std::string show_word(const Word& w); // "12" style, 1-based; "()" for empty

// Length-then-lexicographic order, the canonical basis/witness order.
inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// N x N matrix over {0,1} with no zero row and no zero column, plus cached
// row/column sums. Immutable after validation.
class AdjacencyMatrix {
public:
    static AdjacencyMatrix validate(const std::vector<std::vector<int>>& raw);

    int n() const { return n_; }
    bool at(Letter i, Letter j) const { return entries_[static_cast<size_t>(i) * n_ + j] != 0; }
    int row_sum(Letter i) const { return row_sums_[i]; }
    int col_sum(Letter j) const { return col_sums_[j]; } // N_j
    const std::vector<int>& row_sums() const { return row_sums_; }
    const std::vector<int>& col_sums() const { return col_sums_; }

    AdjacencyMatrix transposed() const;

    bool word_admissible(const Word& w) const;
    // Extension letters j of w (append, A(w_last, j) = 1); all letters for empty w.
    std::vector<Letter> followers(Letter i) const;
    bool irreducible() const; // strongly connected letter digraph

    bool operator==(const AdjacencyMatrix& o) const {
        return n_ == o.n_ && entries_ == o.entries_;
    }

private:
    AdjacencyMatrix() = default;
    int n_ = 0;
    std::vector<int> entries_;
    std::vector<int> row_sums_, col_sums_;
};

// Stock matrices used throughout the test corpus.
AdjacencyMatrix full_shift(int n);        // O_N
AdjacencyMatrix suq2_matrix();            // [[1,1],[0,1]]
AdjacencyMatrix free_group_matrix(int d); // A_{F_d}, 2d x 2d
AdjacencyMatrix ad_matrix(int d);         // A_d = J - I, 2d x 2d

} // namespace ck
