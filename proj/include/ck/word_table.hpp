#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ck/adjacency.hpp"
#include "ck/point.hpp"

namespace ck {

// Admissible words of every length l <= depth, each level sorted
// lexicographically (so globally length-then-lex), plus the counts phi(l).
struct WordTable {
    AdjacencyMatrix A;
    int depth = 0;
    std::vector<std::vector<Word>> words_by_length; // [0..depth]
    std::vector<std::uint64_t> counts;              // phi(0..depth)

    std::uint64_t total() const;
    // Flat index in the length-then-lex enumeration, or nullopt if absent.
    std::optional<size_t> index_of(const Word& w) const;
};

inline constexpr std::uint64_t kDefaultWordCap = 2'000'000;

WordTable enumerate_words(const AdjacencyMatrix& A, int depth,
                          std::uint64_t cap = kDefaultWordCap);

// phi(l) = total of all entries of A^{l-1} for l >= 1 (phi(0) = 1); exact.
std::vector<std::uint64_t> phi_by_matrix_power(const AdjacencyMatrix& A, int depth);

// sigma_V: drop the first letter. Errors on the empty word.
Word shift_word(const Word& w);

// Cylinder equality C_{w} = C_{wv}: every extension step from w through v is
// the unique admissible follower. A word is minimal when no proper prefix has
// the same cylinder.
bool cylinder_equal_extension(const AdjacencyMatrix& A, const Word& w, const Word& v);
bool is_minimal_word(const AdjacencyMatrix& A, const Word& w);

struct ConditionIWitness {
    bool holds = false;
    // When holds: per letter j, a word from j to a doubly-looped letter and
    // the two loops (1-based friendly via show_word). When it fails, the first
    // letter with no such reachable base.
    struct PerLetter {
        Letter letter;
        Word reaching_word; // starts at letter, ends at loop base
        Word loop1, loop2;  // distinct loops based at reaching_word.back()
    };
    std::vector<PerLetter> witnesses;
    std::optional<Letter> failing_letter;
};

ConditionIWitness condition_I(const AdjacencyMatrix& A);

struct DeltaResult {
    double delta = 0.0;       // log spectral radius
    double rho = 1.0;         // spectral radius itself
    double residual = 0.0;    // Rayleigh residual at the returned vector
    int iterations = 0;
    bool used_dense_fallback = false; // power iteration stalled (defective/reducible)
};

// log of the spectral radius of A. Power iteration on A + I with residual
// tolerance `tol`; on stall (reducible or defective dominant eigenvalue) falls
// back to a dense eigensolve and reports it.
DeltaResult delta_A(const AdjacencyMatrix& A, double tol = 1e-12, int max_iter = 200000,
                    bool allow_dense_fallback = true);

} // namespace ck
