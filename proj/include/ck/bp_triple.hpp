#pragma once

#include <optional>

#include "ck/choice.hpp"
#include "ck/linops.hpp"
#include "ck/word_ops.hpp"

namespace ck {

using Spinor = SignedWord;
using SpinorBasis = BasisPtr<Spinor>;
using SpinorOp = SparseOp<Spinor, Spinor>;

// The even Bellissard-Pearson operator on l^2(V_A, C^2): off-diagonal swap
// with diagonal weight |mu|^s (logarithmic) or e^{|mu|} (exponential).
struct BPTriple {
    ChoicePair pair;
    std::optional<double> s; // nullopt = exponential weights
    int depth = 0;

    double weight(size_t len) const;
};

SpinorBasis spinor_basis(const WordTable& t);
SpinorOp bp_operator(const BPTriple& triple, const WordTable& t, SpinorBasis b);
SpinorOp bp_grading(SpinorBasis b); // gamma = +/- 1 on the two components
// pi_tau(f) for a cylinder indicator chi_{C_w}: diagonal, tau_+ on the +
// component and tau_- on the - component.
SpinorOp bp_pi_tau(const BPTriple& triple, SpinorBasis b, const Word& cw);
// s_i = s_{i,tau+} (+) s_{i,tau-} acting diagonally across the two components.
SpinorOp bp_s_i(const BPTriple& triple, const WordTable& t, SpinorBasis b, Letter i);

// Heat trace of the truncated D^2 against the closed form
// 2 sum_{k<=M} phi(k) e^{-t k^{2s}} (identical float expression, so equality
// is exact bitwise).
struct HeatTraceReport {
    double matrix_trace = 0.0;
    double closed_form = 0.0;
};
HeatTraceReport bp_heat_trace(const BPTriple& triple, const WordTable& t, double time);

struct CommutatorDiagnostics {
    // f = chi_{C_mu}: rank of [F, pi_tau(f)] and the bound 2 sum_{k<|mu|} phi(k)
    long long rank_commutator = 0;
    long long rank_bound = 0;
    // logarithmic D: ||[D_s, s_i]|| on the interior (bounded by 1 for s <= 1)
    double log_comm_norm = 0.0;
    // exponential D: witness growth ||[D, s_i] delta_{mu_k}|| = (e-1) e^k
    std::vector<double> exp_growth;
    double exp_epsilon = 0.0; // the epsilon with growth >= epsilon e^k
};
CommutatorDiagnostics commutator_diagnostics(const BPTriple& triple, const WordTable& t,
                                             const Word& mu, Letter i);

} // namespace ck
