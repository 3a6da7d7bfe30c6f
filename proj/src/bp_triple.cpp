#include "ck/bp_triple.hpp"

#include <cmath>

#include "ck/errors.hpp"

namespace ck {

double BPTriple::weight(size_t len) const {
    if (s) return std::pow(static_cast<double>(len), *s); // 0^s = 0
    return std::exp(static_cast<double>(len));
}

SpinorBasis spinor_basis(const WordTable& t) {
    std::vector<Spinor> labels;
    for (const auto& lvl : t.words_by_length)
        for (const Word& w : lvl) {
            labels.push_back({w, +1});
            labels.push_back({w, -1});
        }
    return Basis<Spinor>::make(std::move(labels));
}

SpinorOp bp_operator(const BPTriple& triple, const WordTable& t, SpinorBasis b) {
    (void)t;
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Spinor& sp = b->labels[c];
        const double w = triple.weight(sp.w.size());
        if (w == 0.0) continue;
        const int r = b->find({sp.w, -sp.sign});
        trip.emplace_back(r, int(c), w);
    }
    return SpinorOp::from_triplets(b, b, trip);
}

SpinorOp bp_grading(SpinorBasis b) {
    return diagonal_op<Spinor>(b, [](const Spinor& sp) { return double(sp.sign); });
}

SpinorOp bp_pi_tau(const BPTriple& triple, SpinorBasis b, const Word& cw) {
    return diagonal_op<Spinor>(b, [&](const Spinor& sp) {
        const ChoiceFunction& f = sp.sign > 0 ? triple.pair.plus : triple.pair.minus;
        return f.value(sp.w).starts_with(cw) ? 1.0 : 0.0;
    });
}

SpinorOp bp_s_i(const BPTriple& triple, const WordTable& t, SpinorBasis b, Letter i) {
    std::vector<Eigen::Triplet<double>> trip;
    for (size_t c = 0; c < b->size(); ++c) {
        const Spinor& sp = b->labels[c];
        const ChoiceFunction& f = sp.sign > 0 ? triple.pair.plus : triple.pair.minus;
        for (int j = 0; j < t.A.n(); ++j) {
            if (!sp.w.empty() && !t.A.at(static_cast<Letter>(j), sp.w.front())) continue;
            Word e{static_cast<Letter>(j)};
            e.insert(e.end(), sp.w.begin(), sp.w.end());
            if (f.value(e).letter(0) != i) continue; // pi_t(chi_{C_i}) factor
            const int r = b->find({e, sp.sign});
            if (r >= 0) trip.emplace_back(r, int(c), 1.0);
        }
    }
    return SpinorOp::from_triplets(b, b, trip);
}

HeatTraceReport bp_heat_trace(const BPTriple& triple, const WordTable& t, double time) {
    HeatTraceReport rep;
    for (int k = 0; k <= t.depth; ++k) {
        const double w = triple.weight(static_cast<size_t>(k));
        rep.closed_form += 2.0 * static_cast<double>(t.counts[k]) * std::exp(-time * w * w);
    }
    // D^2 of the assembled operator is diagonal with entry weight(|mu|)^2 on
    // each of the two spinor components: the trace is the eigenvalue
    // multiplicity count straight off the matrix.
    auto b = spinor_basis(t);
    SpinorOp D = bp_operator(triple, t, b);
    SpinorOp D2 = D * D;
    std::vector<double> mult(t.depth + 1, 0.0);
    for (size_t c = 0; c < b->size(); ++c) {
        const size_t len = b->labels[c].w.size();
        const double w = triple.weight(len);
        const double d2 = D2.m.coeff(int(c), int(c));
        if (d2 != w * w) fail("Internal", "BP square is not the expected diagonal");
        mult[len] += 1.0;
    }
    double tr = 0.0;
    for (int k = 0; k <= t.depth; ++k) {
        const double w = triple.weight(static_cast<size_t>(k));
        tr += mult[k] * std::exp(-time * w * w);
    }
    rep.matrix_trace = tr;
    return rep;
}

CommutatorDiagnostics commutator_diagnostics(const BPTriple& triple, const WordTable& t,
                                             const Word& mu, Letter i) {
    CommutatorDiagnostics rep;
    auto b = spinor_basis(t);

    // [F, pi_tau(chi_{C_mu})] with F the phase swap: exact rank count
    {
        std::vector<Eigen::Triplet<double>> trip;
        for (size_t c = 0; c < b->size(); ++c) {
            const Spinor& sp = b->labels[c];
            const int r = b->find({sp.w, -sp.sign});
            trip.emplace_back(r, int(c), 1.0);
        }
        SpinorOp F = SpinorOp::from_triplets(b, b, trip);
        SpinorOp chi = bp_pi_tau(triple, b, mu);
        SpinorOp comm = F * chi - chi * F;
        // entries live on the (nu, +/-) pairs where tau_+ and tau_- disagree
        // about C_mu; each such nu contributes a 2x2 block of rank 2
        Eigen::MatrixXd dense(comm.m);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
        const auto& s = svd.singularValues();
        int rank = 0;
        for (int k = 0; k < s.size(); ++k)
            if (s[k] > 1e-9) ++rank;
        rep.rank_commutator = rank;
        rep.rank_bound = 0;
        for (size_t k = 0; k < mu.size(); ++k) rep.rank_bound += 2 * t.counts[k];
    }

    // logarithmic commutator norm on the interior
    {
        BPTriple logt = triple;
        if (!logt.s) logt.s = 0.5;
        auto D = bp_operator(logt, t, b);
        auto S = bp_s_i(logt, t, b, i);
        rep.log_comm_norm = op_norm_on_interior(D * S - S * D, t.depth - 1);
    }

    // exponential growth along a witness chain mu_k of admissible words with
    // i mu_k admissible: value is exactly (e - 1) e^k
    {
        BPTriple expt = triple;
        expt.s.reset();
        auto D = bp_operator(expt, t, b);
        auto S = bp_s_i(expt, t, b, i);
        auto comm = D * S - S * D;
        rep.exp_epsilon = std::exp(1.0) - 1.0;
        // witness chain |mu_k| = k with i mu_k admissible: greedy from the
        // smallest follower of i
        const Letter head = t.A.followers(i).front();
        for (int k = 1; k + 1 <= t.depth; ++k) {
            Word chain{head};
            while (static_cast<int>(chain.size()) < k)
                chain.push_back(t.A.followers(chain.back()).front());
            const int c = b->find({chain, +1});
            if (c < 0) break;
            Eigen::VectorXd v = Eigen::VectorXd::Zero(comm.m.cols());
            v[c] = 1.0;
            rep.exp_growth.push_back((comm.m * v).norm()); // exactly (e-1) e^k
        }
    }
    return rep;
}

} // namespace ck
