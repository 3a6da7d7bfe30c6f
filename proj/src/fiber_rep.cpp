#include "ck/fiber_rep.hpp"

#include "ck/word_ops.hpp"

#include <cmath>

#include "ck/errors.hpp"

namespace ck {

namespace {

bool ends_with(const Word& w, const Word& suffix) {
    if (suffix.size() > w.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

// Recanonicalize (prefix, cut) to the minimal-cut representative of the same
// groupoid element (x, n, omega).
FiberElement recanonicalize(const AdjacencyMatrix& A, const FiberElement& f,
                            const EpPoint& omega) {
    EpPoint x = fiber_range_point(A, f, omega);
    const long long kap = kappa_scan(x, f.n(), omega);
    if (kap == f.cut) return f;
    Word prefix;
    const long long len = f.n() + kap;
    for (long long i = 0; i < len; ++i) prefix.push_back(x.letter(static_cast<size_t>(i)));
    return FiberElement{std::move(prefix), kap};
}

} // namespace

FiberRep build_fiber_rep(const AdjacencyMatrix& A, const EpPoint& omega, const Word& lambda,
                         int max_prefix, int max_cut) {
    if (!A.word_admissible(lambda)) fail("InadmissibleWord", show_word(lambda));
    FiberRep rep{A, omega, lambda, max_prefix, max_cut, nullptr, {}, {}, {}, {}, nullptr};
    rep.basis = Basis<FiberElement>::make(enumerate_fiber(A, omega, max_prefix, max_cut));

    // S_i delta_{(x,n,omega)} = [i x admissible] delta_{(ix, n+1, omega)},
    // recanonicalized; out-of-window targets go to zero.
    for (int i = 0; i < A.n(); ++i) {
        const Letter li = static_cast<Letter>(i);
        std::vector<Eigen::Triplet<double>> trip;
        for (size_t c = 0; c < rep.basis->size(); ++c) {
            const FiberElement& f = rep.basis->labels[c];
            const Letter first =
                f.prefix.empty() ? omega.letter(static_cast<size_t>(f.cut)) : f.prefix.front();
            if (!A.at(li, first)) continue;
            Word ext{li};
            ext.insert(ext.end(), f.prefix.begin(), f.prefix.end());
            FiberElement target = recanonicalize(A, FiberElement{std::move(ext), f.cut}, omega);
            const int r = rep.basis->find(target);
            if (r >= 0) trip.emplace_back(r, int(c), 1.0);
        }
        rep.S.push_back(FiberOp::from_triplets(rep.basis, rep.basis, trip));
    }

    rep.D = diagonal_op<FiberElement>(rep.basis, [&](const FiberElement& f) {
        return static_cast<double>(psi_lambda(A, fiber_to_groupoid(A, f, omega), lambda));
    });

    {
        std::vector<Eigen::Triplet<double>> trip;
        const int r = rep.basis->find(FiberElement{{}, 0});
        if (r < 0) fail("Internal", "fiber basis lost its unit");
        trip.emplace_back(r, r, 1.0);
        rep.P_omega = FiberOp::from_triplets(rep.basis, rep.basis, trip);
    }

    // W_{lambda,omega} = iota_omega restricted to l^2(V_lambda):
    // delta_mu -> (mu, 0) for mu in V_lambda with live junction, delta_() ->
    // ((), 0) when lambda = (); everything else is annihilated (the vectors
    // S_mu (x) 1 with dead junction have norm zero in the fiber).
    {
        WordTable t = enumerate_words(A, max_prefix);
        rep.word_basis_ = word_basis(t);
        std::vector<Eigen::Triplet<double>> trip;
        for (size_t c = 0; c < rep.word_basis_->size(); ++c) {
            const Word& mu = rep.word_basis_->labels[c];
            if (!ends_with(mu, lambda)) continue;
            if (mu.empty()) { // lambda = (): the unit maps to ((), 0)
                trip.emplace_back(rep.basis->find(FiberElement{{}, 0}), int(c), 1.0);
                continue;
            }
            if (!A.at(mu.back(), omega.letter(0))) continue;
            const int r = rep.basis->find(FiberElement{mu, 0});
            if (r >= 0) trip.emplace_back(r, int(c), 1.0);
        }
        rep.W = SparseOp<Word, FiberElement>::from_triplets(rep.word_basis_, rep.basis, trip);
    }
    return rep;
}

PhaseReport check_phase_identity(const FiberRep& rep) {
    PhaseReport out;
    out.plus_sign = !rep.lambda.empty();
    FiberOp sgn = sign_of_diagonal(rep.D);
    int kdim = 0;
    {
        Eigen::VectorXd d = rep.D.m.diagonal();
        for (int i = 0; i < d.size(); ++i)
            if (d[i] == 0.0) ++kdim;
    }
    out.kernel_dim = kdim;
    FiberOp ww = rep.W * rep.W.adjoint();
    FiberOp idm = identity_op(rep.basis);
    FiberOp rhs = (2.0 * ww) + ((out.plus_sign ? 1.0 : -1.0) * rep.P_omega) - idm;
    out.phase_defect = max_abs_on_interior(sgn - rhs, rep.basis->max_depth);
    return out;
}

double commutator_norm(const FiberRep& rep, Letter i) {
    const FiberOp comm = rep.D * rep.S[i] - rep.S[i] * rep.D;
    // S_i can raise depth by one; restrict sources so targets stay in window.
    return op_norm_on_interior(comm, rep.basis->max_depth - 1);
}

CompressionIndex suq2_compression_index(const AdjacencyMatrix& A, const EpPoint& omega,
                                        const Word& lambda, int max_prefix, int max_cut) {
    // Kernel dimensions of the compression restricted to interior-supported
    // vectors; boundary shells of a truncated shift always carry artifact
    // kernel vectors, which interior support excludes.
    auto dims = [&](int mp) {
        FiberRep rep = build_fiber_rep(A, omega, lambda, mp, max_cut);
        FiberOp u = rep.S[1] + rep.S[0] * rep.S[0].adjoint();
        FiberOp P = diagonal_op<FiberElement>(rep.basis, [&](const FiberElement& f) {
            return psi_lambda(A, fiber_to_groupoid(A, f, omega), lambda) > 0 ? 1.0 : 0.0;
        });
        FiberOp T = P * u * P;
        // Work inside ran P: drop everything outside it from both sides.
        std::vector<int> keep;
        Eigen::VectorXd d = P.m.diagonal();
        for (int i = 0; i < d.size(); ++i)
            if (d[i] == 1.0) keep.push_back(i);
        std::vector<FiberElement> labels;
        for (int i : keep) labels.push_back(rep.basis->labels[i]);
        auto sub = Basis<FiberElement>::make(labels);
        std::vector<Eigen::Triplet<double>> trip;
        for (size_t cc = 0; cc < keep.size(); ++cc)
            for (size_t rr = 0; rr < keep.size(); ++rr) {
                const double v = T.m.coeff(keep[rr], keep[cc]);
                if (v != 0.0) trip.emplace_back(int(rr), int(cc), v);
            }
        FiberOp Tc = FiberOp::from_triplets(sub, sub, trip);
        const long long interior = sub->max_depth - 1; // u has radius <= 1 inside ran P
        return std::pair<int, int>{kernel_dim_interior(Tc, interior),
                                   kernel_dim_interior(Tc.adjoint(), interior)};
    };
    auto [k0, c0] = dims(max_prefix);
    auto [k1, c1] = dims(max_prefix + 1);
    CompressionIndex out;
    out.dim_ker = k0;
    out.dim_coker = c0;
    out.index = k0 - c0;
    out.stable = (k0 == k1 && c0 == c1);
    if (!out.stable)
        fail("UnstableIndex", "kernel dims change with depth: (" + std::to_string(k0) + "," +
                                  std::to_string(c0) + ") -> (" + std::to_string(k1) + "," +
                                  std::to_string(c1) + ")");
    return out;
}

} // namespace ck
