#pragma once

#include "ck/choice.hpp"
#include "ck/ktheory.hpp"
#include "ck/linops.hpp"
#include "ck/word_table.hpp"

namespace ck {

// Index of the product-space basis: the (n,k) frame word mu (|mu| = n+k), the
// tree word v of the Bellissard-Pearson factor, and the spinor sign. An index
// is admissible when the diagonal entry of the frame projection p_{n,k} at
// mu, evaluated at tau_sign(v), equals one.
struct ProdIndex {
    int n = 0, k = 0;
    Word mu, v;
    int sign = +1;

    bool operator<(const ProdIndex& o) const {
        if (k != o.k) return k < o.k;
        if (n != o.n) return n < o.n;
        if (mu != o.mu) return word_less(mu, o.mu);
        if (v != o.v) return word_less(v, o.v);
        return sign > o.sign;
    }
    bool operator==(const ProdIndex& o) const {
        return n == o.n && k == o.k && mu == o.mu && v == o.v && sign == o.sign;
    }
};
inline long long basis_depth(const ProdIndex& p) { return p.n + p.k; }

using ProdBasis = BasisPtr<ProdIndex>;
using ProdOp = SparseOp<ProdIndex, ProdIndex>;

struct ProductBounds {
    int max_nk = 4; // bound on both |mu| = n + k and k
    int max_v = 4;  // bound on |v|
};

struct ProductOperator {
    AdjacencyMatrix A;
    Word lambda;
    ChoicePair pair;
    double s = 0.5;
    ProductBounds bounds;
    ProdBasis basis;
    ProdOp D_geom;          // D_lambda (x) gamma, diagonal sign * psi_lambda(n,k,mu)
    ProdOp D_conn;          // 1 (x)_nabla D_{V,s}: sign swap with weight |v|^s
    std::vector<ProdOp> S;  // left actions of the generators
    ProdOp D() const;       // D_geom + D_conn
};

// The diagonal entry of the frame projection p_{n,k} at mu, evaluated at x.
bool prod_index_admissible(const AdjacencyMatrix& A, int k, const Word& mu, const EpPoint& x);

ProductOperator build_product(const AdjacencyMatrix& A, const Word& lambda,
                              const ChoicePair& pair, double s, ProductBounds bounds,
                              std::uint64_t cap = kDefaultWordCap);

struct ChiStructureReport {
    double defect_extend = 0.0;    // S_i chi^k_{n,mu} = A_{i,mu_1} chi^k_{n+1,i mu}
    double defect_adjoint = 0.0;  // (chi^k_{n,mu})^* S_i = delta_{i,mu_1}(chi^k_{n-1,sigma mu})^*
    double defect_root_split = 0.0;   // the two-term relation on the circ blocks
    double defect_pi = 0.0;       // S_i S_i^* = diagonal [x_{k+1} = i] on circ blocks
};
ChiStructureReport chi_structure_check(const ProductOperator& P);

struct ConnCommReport {
    double defect = 0.0;            // [D_conn, S_i] vs the two-part closed form
    double support_leak = 0.0;      // entries on columns with |v| > k
    double max_block_excess = 0.0;  // max over k of (block norm - k^s), principal part
    double bp_factor_excess = 0.0;  // || [D_s, pi_tau(chi_{C_i} o sigma^k)] || - k^s
};
ConnCommReport connection_commutator(const ProductOperator& P, Letter i);

struct EpsilonBoundReport {
    double left_full = 0.0, right_full = 0.0;       // damped norms of [D_conn, S_i]
    double left_principal = 0.0, right_principal = 0.0; // damped norms, principal part only
    double corrected_bound = 1.0;                   // max(1, 2^{1/2 - s})
};
EpsilonBoundReport epsilon_bound_check(const ProductOperator& P, Letter i);

// || [D_geom, S_i] || on the interior; bounded by max(2, 2|lambda| - 1).
double geom_commutator_norm(const ProductOperator& P, Letter i);

struct RationalClassReport {
    Letter j_plus = 0, j_minus = 0;
    std::vector<long long> coefficients; // in the [beta_j] generators
    DualityClass cls;                    // image in coker(1 - A)
};
RationalClassReport rational_class_report(const AdjacencyMatrix& A, const Word& lambda,
                                          const ChoicePair& pair);

} // namespace ck
