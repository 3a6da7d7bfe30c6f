#pragma once

#include "ck/groupoid.hpp"
#include "ck/linops.hpp"
#include "ck/word_table.hpp"

namespace ck {

using FiberBasis = BasisPtr<FiberElement>;
using FiberOp = SparseOp<FiberElement, FiberElement>;

// The truncated fiber module E^Omega_A (x)_omega C over a boundary point,
// with the left S_i-actions, the diagonal operator D_lambda, the kernel
// projection P_omega and the partial isometry W_{lambda,omega}.
struct FiberRep {
    AdjacencyMatrix A;
    EpPoint omega;
    Word lambda;
    int max_prefix = 0, max_cut = 0;
    FiberBasis basis;
    std::vector<FiberOp> S;       // one per letter
    FiberOp D;                    // diagonal psi_lambda
    FiberOp P_omega;              // rank one onto ((), 0)
    SparseOp<Word, FiberElement> W; // iota_omega restricted to l^2(V_lambda)
    BasisPtr<Word> word_basis_;   // domain of W
};

FiberRep build_fiber_rep(const AdjacencyMatrix& A, const EpPoint& omega, const Word& lambda,
                         int max_prefix, int max_cut);

struct PhaseReport {
    int kernel_dim = 0;       // of D restricted to the truncation
    double phase_defect = 0;  // || sign(D) - (2WW^* +/- P_omega - 1) || entrywise
    bool plus_sign = true;    // + for lambda != (), - for lambda = ()
};
PhaseReport check_phase_identity(const FiberRep& rep);

// || [D_lambda (x) 1, S_i] || restricted to interior columns; the bound is
// max(2, 2|lambda| - 1).
double commutator_norm(const FiberRep& rep, Letter i);

// Compression index of u = S_2 + S_1 S_1^* by the positive spectral
// projection of D (the SU_q(2) Toeplitz-type pairing); checks kernel
// stability against one extra unit of prefix depth.
struct CompressionIndex {
    int index = 0;
    int dim_ker = 0, dim_coker = 0;
    bool stable = false;
};
CompressionIndex suq2_compression_index(const AdjacencyMatrix& A, const EpPoint& omega,
                                        const Word& lambda, int max_prefix, int max_cut);

} // namespace ck
