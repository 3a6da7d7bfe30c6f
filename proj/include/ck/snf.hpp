#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace ck {

using Int = boost::multiprecision::cpp_int;
using IntMat = std::vector<std::vector<Int>>; // row major

IntMat int_identity(size_t n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);
IntMat int_sub(const IntMat& a, const IntMat& b);
IntMat int_pow(const IntMat& a, int e);
Int int_det(const IntMat& a); // Bareiss, exact
size_t int_rank(const IntMat& a);

// U M V = D with U, V unimodular and D diagonal, entries nonnegative in a
// divisibility chain d_1 | d_2 | ... Pivots: smallest nonzero absolute value,
// ties row-major, for reproducibility.
struct SNFResult {
    IntMat D, U, V;
    std::vector<Int> diagonal() const;
};
SNFResult snf(const IntMat& M);

// Column-style Hermite basis of the lattice spanned by the columns of M:
// returns an n x r matrix whose columns are a basis of the column lattice.
IntMat column_lattice_basis(const IntMat& M);

// Free rank plus invariant factors (each >= 2, in a divisibility chain).
struct FGAbelianGroup {
    size_t free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const FGAbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string str() const;
};

FGAbelianGroup cokernel(const IntMat& M); // Z^rows / M Z^cols
size_t kernel_rank(const IntMat& M);      // rank of ker(M) in Z^cols

} // namespace ck
