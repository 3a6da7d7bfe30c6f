#include "ck/word_ops.hpp"

#include <cmath>

namespace ck {

namespace {

bool ends_with(const Word& w, const Word& suffix) {
    if (suffix.size() > w.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

bool starts_with_word(const Word& w, const Word& prefix) {
    if (prefix.size() > w.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), w.begin());
}

} // namespace

WordBasis word_basis(const WordTable& t) {
    std::vector<Word> labels;
    for (const auto& lvl : t.words_by_length)
        for (const auto& w : lvl) labels.push_back(w);
    return Basis<Word>::make(std::move(labels));
}

WordOp build_L(const WordTable& t, WordBasis b, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& w = b->labels[c];
        if (!w.empty() && !t.A.at(i, w.front())) continue;
        Word e{i};
        e.insert(e.end(), w.begin(), w.end());
        const int r = b->find(e);
        if (r >= 0) trip.emplace_back(r, int(c), 1.0);
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_R(const WordTable& t, WordBasis b, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& w = b->labels[c];
        if (!w.empty() && !t.A.at(w.back(), i)) continue;
        Word e = w;
        e.push_back(i);
        const int r = b->find(e);
        if (r >= 0) trip.emplace_back(r, int(c), 1.0);
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_L_word(const WordTable& t, WordBasis b, const Word& w) {
    WordOp op = identity_op(b);
    for (auto it = w.rbegin(); it != w.rend(); ++it) op = build_L(t, b, *it) * op;
    return op;
}

WordOp build_P_circ(WordBasis b) {
    std::vector<Eigen::Triplet<double>> trip;
    const int r = b->find(Word{});
    if (r >= 0) trip.emplace_back(r, r, 1.0);
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_rank_one(WordBasis b, const Word& to, const Word& from) {
    std::vector<Eigen::Triplet<double>> trip;
    const int r = b->find(to), c = b->find(from);
    if (r >= 0 && c >= 0) trip.emplace_back(r, c, 1.0);
    return WordOp::from_triplets(b, b, trip);
}

LiRiReport check_liri_relations(const WordTable& t, WordBasis b) {
    LiRiReport rep;
    WordOp Pc = build_P_circ(b);
    for (int i = 0; i < t.A.n(); ++i)
        for (int j = 0; j < t.A.n(); ++j) {
            const Letter li = static_cast<Letter>(i), lj = static_cast<Letter>(j);
            WordOp L = build_L(t, b, li), R = build_R(t, b, lj);
            rep.defect_commute =
                std::max(rep.defect_commute, max_abs_on_interior(L * R - R * L, t.depth - 2));
            WordOp lhs = L.adjoint() * R - R * L.adjoint();
            WordOp rhs = WordOp::zero(b, b);
            if (i == j) rhs = rhs + Pc;
            if (!t.A.at(li, lj)) rhs = rhs - build_rank_one(b, Word{lj}, Word{li});
            rep.defect_adjoint =
                std::max(rep.defect_adjoint, max_abs_on_interior(lhs - rhs, t.depth - 1));
        }
    return rep;
}

WordOp build_V_sigma(const WordTable& t, WordBasis b) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& w = b->labels[c];
        for (int j = 0; j < t.A.n(); ++j) {
            if (!w.empty() && !t.A.at(static_cast<Letter>(j), w.front())) continue;
            Word e{static_cast<Letter>(j)};
            e.insert(e.end(), w.begin(), w.end());
            const int r = b->find(e);
            if (r >= 0) trip.emplace_back(r, int(c), 1.0);
        }
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_cylinder_projection(WordBasis b, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& w = b->labels[c];
        if (!w.empty() && w.front() == i) trip.emplace_back(int(c), int(c), 1.0);
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_pullback_diagonal(WordBasis b, const std::function<double(const Word&)>& f) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const double v = f(b->labels[c]);
        if (v != 0.0) trip.emplace_back(int(c), int(c), v);
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_s_it(const WordTable& t, WordBasis b, Letter i, const CylinderEval& tau) {
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& mu = b->labels[c];
        if (!tau.contains(mu, mu))
            fail("CylinderViolation", "t(" + show_word(mu) + ") lies outside C_" + show_word(mu));
    }
    Word ci{i};
    WordOp diag = build_pullback_diagonal(
        b, [&](const Word& mu) { return tau.contains(mu, ci) ? 1.0 : 0.0; });
    return diag * build_V_sigma(t, b);
}

std::string MonomialClassification::describe() const {
    switch (kind) {
        case kS: return "S_" + show_word(beta);
        case kQ: return "Q_" + std::to_string(int(q) + 1);
        case kSStar: return "S_" + show_word(beta) + "^*";
        default: return "0";
    }
}

MonomialClassification monomial_product_check(const WordTable& t, WordBasis b, const Word& nu,
                                              const Word& gamma) {
    if (!t.A.word_admissible(nu)) fail("InadmissibleWord", show_word(nu));
    if (!t.A.word_admissible(gamma)) fail("InadmissibleWord", show_word(gamma));
    MonomialClassification out{};
    if (starts_with_word(gamma, nu)) {
        Word beta(gamma.begin() + nu.size(), gamma.end());
        if (beta.empty() && !nu.empty()) {
            out.kind = MonomialClassification::kQ;
            out.q = nu.back();
        } else { // includes nu = gamma = (): S_() = 1
            out.kind = MonomialClassification::kS;
            out.beta = std::move(beta);
        }
    } else if (starts_with_word(nu, gamma)) {
        out.kind = MonomialClassification::kSStar;
        out.beta = Word(nu.begin() + gamma.size(), nu.end());
    } else {
        out.kind = MonomialClassification::kZero;
    }

    WordOp lhs = build_L_word(t, b, nu).adjoint() * build_L_word(t, b, gamma);
    WordOp rhs = WordOp::zero(b, b);
    switch (out.kind) {
        case MonomialClassification::kS: rhs = build_L_word(t, b, out.beta); break;
        case MonomialClassification::kSStar:
            rhs = build_L_word(t, b, out.beta).adjoint();
            break;
        case MonomialClassification::kQ: {
            // Q_j = sum_l A_{jl} P_l as a cylinder projection; on the word
            // space the product picks up the rank-one root term P_().
            WordOp q = WordOp::zero(b, b);
            for (int l = 0; l < t.A.n(); ++l)
                if (t.A.at(out.q, static_cast<Letter>(l)))
                    q = q + build_cylinder_projection(b, static_cast<Letter>(l));
            rhs = q + build_P_circ(b);
            break;
        }
        case MonomialClassification::kZero: break;
    }
    const long long interior = t.depth - static_cast<long long>(gamma.size());
    out.defect = max_abs_on_interior(lhs - rhs, interior);
    return out;
}

WordOp build_pi_gns(const WordTable& t, WordBasis b, const ConformalMeasure& m, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    const double ci = m.c_of_last_letter(i);
    for (size_t c = 0; c < b->size(); ++c) {
        const Word& w = b->labels[c];
        if (!w.empty() && !t.A.at(i, w.front())) continue;
        Word e{i};
        e.insert(e.end(), w.begin(), w.end());
        const int r = b->find(e);
        if (r >= 0) trip.emplace_back(r, int(c), w.empty() ? 1.0 / ci : 1.0);
    }
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_W_lambda(const WordTable& t, WordBasis b, const Word& lambda) {
    (void)t;
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c)
        if (ends_with(b->labels[c], lambda)) trip.emplace_back(int(c), int(c), 1.0);
    return WordOp::from_triplets(b, b, trip);
}

WordOp build_P_lambda(WordBasis b, const Word& lambda) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c)
        if (ends_with(b->labels[c], lambda)) trip.emplace_back(int(c), int(c), 1.0);
    return WordOp::from_triplets(b, b, trip);
}

WLambdaReport check_W_lambda(const WordTable& t, WordBasis b, const ConformalMeasure& m,
                             const Word& lambda) {
    WLambdaReport rep;
    WordOp W = build_W_lambda(t, b, lambda);
    WordOp P = build_P_lambda(b, lambda);
    rep.defect_wstar_w = max_abs_on_interior(W.adjoint() * W - P, t.depth);
    for (int i = 0; i < t.A.n(); ++i) {
        const Letter li = static_cast<Letter>(i);
        WordOp lhs = W.adjoint() * (build_pi_gns(t, b, m, li) * W);
        WordOp rhs = build_L(t, b, li) * P;
        if (lambda.empty()) {
            // At the root the GNS normalization is c_() = 1 while c_{i ()} =
            // c_i, so an exact (1/c_i - 1) rank-one term appears.
            const double ci = m.c_of_last_letter(li);
            if (ci != 1.0) {
                rep.root_correction_used = true;
                rhs = rhs + (1.0 / ci - 1.0) * (build_L(t, b, li) * build_P_circ(b));
            }
        }
        rep.defect_intertwine =
            std::max(rep.defect_intertwine, max_abs_on_interior(lhs - rhs, t.depth - 1));
    }
    return rep;
}

PairBasis pair_basis(const WordTable& t) {
    std::vector<PairWord> labels;
    for (int total = 0; total <= t.depth; ++total)
        for (int lm = 0; lm <= total; ++lm) {
            const int ln = total - lm;
            for (const Word& mu : t.words_by_length[lm])
                for (const Word& nu : t.words_by_length[ln]) labels.push_back({mu, nu});
        }
    return Basis<PairWord>::make(std::move(labels));
}

KPIsometry build_KP_isometry(const WordTable& t, WordBasis wb, PairBasis pb) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < wb->size(); ++c) {
        const Word& lam = wb->labels[c];
        const double coeff = 1.0 / std::sqrt(static_cast<double>(lam.size()) + 1.0);
        for (size_t p = 0; p <= lam.size(); ++p) {
            PairWord pw{Word(lam.begin(), lam.begin() + p), Word(lam.begin() + p, lam.end())};
            const int r = pb->find(pw);
            if (r >= 0) trip.emplace_back(r, int(c), coeff);
        }
    }
    KPIsometry out{SparseOp<Word, PairWord>::from_triplets(wb, pb, trip), WordOp::zero(wb, wb)};
    out.Gamma = diagonal_op<Word>(wb, [](const Word& w) {
        const double l = static_cast<double>(w.size());
        return std::sqrt((l + 1.0) / (l + 2.0)) - 1.0;
    });
    (void)t;
    return out;
}

PairOp build_pair_S(const WordTable& t, PairBasis pb, const ConformalMeasure& mA, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    const double ci = mA.c_of_last_letter(i);
    for (size_t c = 0; c < pb->size(); ++c) {
        const PairWord& p = pb->labels[c];
        if (!p.mu.empty() && !t.A.at(i, p.mu.front())) continue;
        PairWord q = p;
        q.mu.insert(q.mu.begin(), i);
        const int r = pb->find(q);
        if (r >= 0) trip.emplace_back(r, int(c), p.mu.empty() ? 1.0 / ci : 1.0);
    }
    return PairOp::from_triplets(pb, pb, trip);
}

PairOp build_pair_T(const WordTable& t, PairBasis pb, const ConformalMeasure& mAT, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    const double ci = mAT.c_of_last_letter(i); // c^T depends on the first letter of nu
    for (size_t c = 0; c < pb->size(); ++c) {
        const PairWord& p = pb->labels[c];
        if (!p.nu.empty() && !t.A.at(p.nu.back(), i)) continue; // nu i admissible over A
        PairWord q = p;
        q.nu.push_back(i);
        const int r = pb->find(q);
        if (r >= 0) trip.emplace_back(r, int(c), p.nu.empty() ? 1.0 / ci : 1.0);
    }
    return PairOp::from_triplets(pb, pb, trip);
}

KPReport check_KP_isometry(const WordTable& t, WordBasis wb, const ConformalMeasure& mA,
                           const ConformalMeasure& mAT) {
    KPReport rep;
    PairBasis pb = pair_basis(t);
    KPIsometry kp = build_KP_isometry(t, wb, pb);
    rep.defect_isometry = max_abs_on_interior(kp.W.adjoint() * kp.W - identity_op(wb), t.depth);
    for (int i = 0; i < t.A.n(); ++i) {
        const Letter li = static_cast<Letter>(i);
        const double cS = mA.c_of_last_letter(li);
        const double cT = mAT.c_of_last_letter(li);
        auto gdiag = [](double cinv) {
            return [cinv](const Word& w) {
                const double l = static_cast<double>(w.size());
                return (l + cinv) / std::sqrt((l + 1.0) * (l + 2.0));
            };
        };
        WordOp GS = diagonal_op<Word>(wb, gdiag(1.0 / cS));
        WordOp GT = diagonal_op<Word>(wb, gdiag(1.0 / cT));
        WordOp lhsS = kp.W.adjoint() * (build_pair_S(t, pb, mA, li) * kp.W);
        WordOp lhsT = kp.W.adjoint() * (build_pair_T(t, pb, mAT, li) * kp.W);
        rep.defect_S = std::max(
            rep.defect_S, max_abs_on_interior(lhsS - build_L(t, wb, li) * GS, t.depth - 1));
        rep.defect_R = std::max(
            rep.defect_R, max_abs_on_interior(lhsT - build_R(t, wb, li) * GT, t.depth - 1));
    }
    const double l = static_cast<double>(rep.gamma_probe);
    rep.gamma_ratio_at = std::abs(std::sqrt((l + 1.0) / (l + 2.0)) - 1.0) * 2.0 * l;
    return rep;
}

GaugeReport gauge_module_checks(const WordTable& t, WordBasis b, int n) {
    if (t.depth < n + 2) fail("BadDepth", "gauge checks need truncation depth >= n + 2");
    GaugeReport rep;
    rep.interior = t.depth;

    WordOp vsum = WordOp::zero(b, b);
    for (const Word& mu : t.words_by_length[n]) {
        WordOp Lmu = build_L_word(t, b, mu);
        vsum = vsum + Lmu * Lmu.adjoint();
    }
    WordOp id = identity_op(b);
    rep.defect_vn = max_abs_on_interior(vsum - id, t.depth, n);
    // Below depth n the sum is the zero operator (the known finite-rank gap).
    rep.defect_vn = std::max(rep.defect_vn, max_abs_on_interior(vsum, n - 1, 0));

    WordOp w1 = WordOp::zero(b, b);
    for (int i = 0; i < t.A.n(); ++i)
        for (int j = 0; j < t.A.n(); ++j) {
            const double nj = static_cast<double>(t.A.col_sum(static_cast<Letter>(j)));
            WordOp Rij = (1.0 / std::sqrt(nj)) *
                         (build_L(t, b, static_cast<Letter>(i)) *
                          build_cylinder_projection(b, static_cast<Letter>(j)));
            w1 = w1 + Rij.adjoint() * Rij;
        }
    rep.defect_w1 = max_abs_on_interior(w1 - (id - build_P_circ(b)), t.depth - 1, 0);
    return rep;
}

} // namespace ck
