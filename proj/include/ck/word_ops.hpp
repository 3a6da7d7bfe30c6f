#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ck/linops.hpp"
#include "ck/measure.hpp"
#include "ck/word_table.hpp"

namespace ck {

using WordOp = SparseOp<Word, Word>;
using WordBasis = BasisPtr<Word>;

// The l^2(V_A) truncation basis: all admissible words up to the table depth,
// in length-then-lex order.
WordBasis word_basis(const WordTable& t);

// L_i: delta_mu -> delta_{i mu};  R_i: delta_mu -> delta_{mu i}. Radius 1.
WordOp build_L(const WordTable& t, WordBasis b, Letter i);
WordOp build_R(const WordTable& t, WordBasis b, Letter i);
WordOp build_L_word(const WordTable& t, WordBasis b, const Word& w); // L_{w_1}...L_{w_k}
WordOp build_P_circ(WordBasis b);                                    // rank one onto delta_()
WordOp build_rank_one(WordBasis b, const Word& to, const Word& from); // |delta_to><delta_from|

// Exact commutator identities of the L/R pair on the word space:
//   [L_i, R_j] = 0,
//   [L_i^*, R_j] = delta_ij P_() - (1 - A_ij) |delta_j><delta_i|.
// The rank-one tail vanishes on full shifts; it is the delta_i column where
// R_j dies against the inadmissible junction while L_i^* has already erased i.
struct LiRiReport {
    double defect_commute = 0.0; // [L_i, R_j] = 0
    double defect_adjoint = 0.0; // corrected identity above
};
LiRiReport check_liri_relations(const WordTable& t, WordBasis b);
// V_sigma f(v) = f(sigma v) (0 at the root): delta_mu -> sum_{j mu adm} delta_{j mu}.
WordOp build_V_sigma(const WordTable& t, WordBasis b);
// Diagonal projection onto words starting with the letter i (the root excluded).
WordOp build_cylinder_projection(WordBasis b, Letter i);
// Diagonal multiplication by mu -> f(t(mu)) for a choice-function pullback.
WordOp build_pullback_diagonal(WordBasis b, const std::function<double(const Word&)>& f);

// s_{i,t} = pi_t(chi_{C_i}) V_sigma for a map t satisfying the cylinder
// condition; t is passed as word -> point-membership tests.
struct CylinderEval {
    // chi_{C_w}(t(mu)) for the underlying map t
    std::function<bool(const Word& mu, const Word& w)> contains;
};
WordOp build_s_it(const WordTable& t, WordBasis b, Letter i, const CylinderEval& tau);

// S_nu^* S_gamma classification (the four monomial cases) plus the exact
// matrix verification against L_nu^adj L_gamma on the interior. The Q case
// carries the known rank-one root correction L_nu^adj L_nu = Q_{nu_k} + P_().
struct MonomialClassification {
    enum Kind { kS, kQ, kSStar, kZero } kind;
    Word beta;    // for kS / kSStar
    Letter q = 0; // for kQ
    double defect = 0.0;
    std::string describe() const;
};
MonomialClassification monomial_product_check(const WordTable& t, WordBasis b, const Word& nu,
                                              const Word& gamma);

// --- GNS submodule span{S_mu} ------------------------------------------------

// In the orthonormal basis {c_mu S_mu} (c_() = 1), pi(S_i) maps the mu-vector
// to (c_mu / c_{i mu}) times the {i mu}-vector.
WordOp build_pi_gns(const WordTable& t, WordBasis b, const ConformalMeasure& m, Letter i);
// W_lambda: delta_mu -> c_mu S_mu for mu in V_lambda, else 0 (suffix test).
WordOp build_W_lambda(const WordTable& t, WordBasis b, const Word& lambda);
// P_lambda = R_{lambda-bar} R_{lambda-bar}^*: diagonal projection onto V_lambda.
WordOp build_P_lambda(WordBasis b, const Word& lambda);

struct WLambdaReport {
    double defect_wstar_w = 0.0;        // || W^*W - P_lambda || entrywise, interior
    double defect_intertwine = 0.0;     // max_i || W^* pi(S_i) W - L_i P_lambda - corr ||
    bool root_correction_used = false;  // lambda = (): (1/c_i - 1) L_i P_() term
};
WLambdaReport check_W_lambda(const WordTable& t, WordBasis b, const ConformalMeasure& m,
                             const Word& lambda);

// --- Kaminker-Putnam isometry -----------------------------------------------

using PairBasis = BasisPtr<PairWord>;
using PairOp = SparseOp<PairWord, PairWord>;
using WordToPair = SparseOp<Word, PairWord>;

// Basis of the H_0 (x) H_0^T truncation: pairs of admissible words with
// |mu| + |nu| <= depth.
PairBasis pair_basis(const WordTable& t);

struct KPIsometry {
    WordToPair W;  // delta_lambda -> sum_{mu nu = lambda} (|lambda|+1)^{-1/2} (mu, nu)
    WordOp Gamma;  // diagonal sqrt((l+1)/(l+2)) - 1
};
KPIsometry build_KP_isometry(const WordTable& t, WordBasis wb, PairBasis pb);

// pi(S_i) (x) 1 and 1 (x) pi(T_i) on the pair basis, with the c-ratio weights
// from the two GNS normalizations (measure of A and of A^T).
PairOp build_pair_S(const WordTable& t, PairBasis pb, const ConformalMeasure& mA, Letter i);
PairOp build_pair_T(const WordTable& t, PairBasis pb, const ConformalMeasure& mAT, Letter i);

struct KPReport {
    double defect_isometry = 0.0;   // W^*W = 1 on interior
    double defect_S = 0.0;          // W^*[pi(S_i)(x)1]W = L_i G_i exactly
    double defect_R = 0.0;          // W^*[1(x)pi(T_i)]W = R_i G_i^T exactly
    double gamma_ratio_at = 0.0;    // |Gamma(l)| * 2l at l = gamma_probe
    int gamma_probe = 20;
};
KPReport check_KP_isometry(const WordTable& t, WordBasis wb, const ConformalMeasure& mA,
                           const ConformalMeasure& mAT);

// --- gauge module identities --------------------------------------------------

struct GaugeReport {
    double defect_vn = 0.0;      // sum_{|mu|=n} S_mu S_mu^* = 1 on depth >= n interior
    double defect_w1 = 0.0;      // w_1^* w_1 = 1 on depth >= 1 interior
    long long interior = 0;
};
GaugeReport gauge_module_checks(const WordTable& t, WordBasis b, int n);

} // namespace ck
