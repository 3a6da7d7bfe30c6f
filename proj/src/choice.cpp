#include "ck/choice.hpp"

#include <algorithm>

#include <cmath>

#include "ck/errors.hpp"

namespace ck {

EpPoint ChoiceFunction::greedy_from(const Word& mu) const {
    // Deterministic walk: from the current letter, step to the smallest
    // (largest) admissible follower. The walk enters a cycle within N steps.
    const int n = A_.n();
    auto step = [&](int from) {
        const auto f = A_.followers(static_cast<Letter>(from));
        return static_cast<int>(rule_ == Rule::GreedyMin ? f.front() : f.back());
    };
    int start;
    if (mu.empty()) {
        start = rule_ == Rule::GreedyMin ? 0 : n - 1;
    } else {
        start = step(mu.back());
    }
    std::vector<int> path = {start};
    std::vector<int> seen_at(n, -1);
    seen_at[start] = 0;
    for (;;) {
        const int nxt = step(path.back());
        if (seen_at[nxt] >= 0) {
            Word pre;
            for (int i = 0; i < seen_at[nxt]; ++i) pre.push_back(static_cast<Letter>(path[i]));
            Word per;
            for (size_t i = static_cast<size_t>(seen_at[nxt]); i < path.size(); ++i)
                per.push_back(static_cast<Letter>(path[i]));
            Word full = mu;
            full.insert(full.end(), pre.begin(), pre.end());
            return EpPoint::make(A_, std::move(full), std::move(per));
        }
        seen_at[nxt] = static_cast<int>(path.size());
        path.push_back(nxt);
    }
}

EpPoint ChoiceFunction::value(const Word& mu) const {
    if (!A_.word_admissible(mu)) fail("InadmissibleWord", show_word(mu));
    auto it = overrides_.find(mu);
    if (it != overrides_.end()) return it->second;
    return greedy_from(mu);
}

void ChoiceFunction::set_override(const Word& mu, const EpPoint& p) {
    if (!p.starts_with(mu))
        fail("CylinderViolation",
             "override " + p.str() + " for " + show_word(mu) + " leaves C_" + show_word(mu));
    overrides_.insert_or_assign(mu, p);
}

ChoicePair make_default_pair(const AdjacencyMatrix& A) {
    return ChoicePair{ChoiceFunction(A, ChoiceFunction::Rule::GreedyMin),
                      ChoiceFunction(A, ChoiceFunction::Rule::GreedyMax), 1.0};
}

void check_cylinder_condition(const ChoiceFunction& f, int depth) {
    WordTable t = enumerate_words(f.matrix(), depth);
    for (const auto& lvl : t.words_by_length)
        for (const Word& mu : lvl)
            if (!f.value(mu).starts_with(mu))
                fail("CylinderViolation", "t(" + show_word(mu) + ") = " + f.value(mu).str());
}

double comparability_constant(const ChoicePair& pair, int depth) {
    WordTable t = enumerate_words(pair.plus.matrix(), depth);
    double c = 0.0;
    for (const auto& lvl : t.words_by_length)
        for (const Word& mu : lvl) {
            const double d = metric_distance(pair.plus.value(mu), pair.minus.value(mu));
            c = std::max(c, d * std::exp(static_cast<double>(mu.size())));
        }
    return c;
}

long long index_pairing(const ChoicePair& pair, const Word& mu) {
    const AdjacencyMatrix& A = pair.plus.matrix();
    if (!A.word_admissible(mu)) fail("InadmissibleWord", show_word(mu));
    if (mu.empty()) return 0; // chi_{C_()} = 1 commutes with everything
    WordTable t = enumerate_words(A, static_cast<int>(mu.size()) - 1);
    long long total = 0;
    for (const auto& lvl : t.words_by_length)
        for (const Word& nu : lvl) {
            total += pair.plus.value(nu).starts_with(mu) ? 1 : 0;
            total -= pair.minus.value(nu).starts_with(mu) ? 1 : 0;
        }
    return total;
}

ChoicePair construct_tau_for(const AdjacencyMatrix& A, const Word& mu) {
    if (!A.word_admissible(mu) || mu.empty())
        fail("InadmissibleWord", "need a nonempty admissible word, got " + show_word(mu));

    // Longest minimal prefix nu0; the letters beyond nu0 are forced, so
    // C_{nu0} = C_mu and it suffices to build the pair for nu0.
    Word nu0;
    for (size_t p = 1; p <= mu.size(); ++p) {
        Word prefix(mu.begin(), mu.begin() + p);
        if (is_minimal_word(A, prefix)) nu0 = prefix;
    }
    if (nu0.empty()) fail("NotMinimalizable", "no minimal prefix of " + show_word(mu));
    if (!cylinder_equal_extension(A, nu0, Word(mu.begin() + nu0.size(), mu.end())))
        fail("NotMinimalizable", "letters of " + show_word(mu) + " beyond " + show_word(nu0) +
                                     " are not forced");

    ChoicePair pair = make_default_pair(A);
    const ChoicePair base = make_default_pair(A);

    // Redefine on every proper prefix nu of nu0 (the root included) following
    // the four cases; afterwards tau+(nu) in C_{nu0} xor tau-(nu) in C_{nu0}
    // holds exactly at |nu| = |nu0| - 1.
    for (size_t p = 0; p + 1 <= nu0.size(); ++p) {
        Word nu(nu0.begin(), nu0.begin() + p);
        const size_t lambda_len = nu0.size() - p;
        const EpPoint tp = base.plus.value(nu);
        const EpPoint tm = base.minus.value(nu);
        const bool equal_pts = tp == tm;
        if (lambda_len > 1) {
            if (equal_pts) continue; // case A: both inside or both outside C_{nu0}
            // case C: collapse both onto tau-
            pair.plus.set_override(nu, tm);
            pair.minus.set_override(nu, tm);
            continue;
        }
        // |lambda| = 1 below
        if (!equal_pts) { // case B
            const bool pin = tp.starts_with(nu0);
            const bool min = tm.starts_with(nu0);
            if (pin && !min) continue;
            if (min && !pin) { // swap
                pair.plus.set_override(nu, tm);
                pair.minus.set_override(nu, tp);
                continue;
            }
            if (!pin && !min) {
                pair.plus.set_override(nu, base.plus.value(nu0)); // lands in C_{nu0}
                continue;
            }
            // both inside cannot happen for the greedy base: the two greedy
            // continuations diverge at the first letter after nu
            fail("NotMinimalizable", "greedy base pair degenerate at " + show_word(nu));
        }
        // case D: equal points, need an admissible sibling letter
        const Letter next = nu0[p];
        Letter sibling = 0;
        bool found = false;
        std::vector<Letter> fols;
        if (nu.empty()) {
            for (int j = 0; j < A.n(); ++j) fols.push_back(static_cast<Letter>(j));
        } else {
            fols = A.followers(nu.back());
        }
        for (Letter j : fols)
            if (j != next) {
                sibling = j;
                found = true;
                break;
            }
        if (!found)
            fail("NotMinimalizable",
                 "no admissible sibling of " + show_word(nu0) + " at prefix " + show_word(nu));
        Word nusib = nu;
        nusib.push_back(sibling);
        pair.plus.set_override(nu, base.plus.value(nu0));
        pair.minus.set_override(nu, base.minus.value(nusib));
    }
    return pair;
}

} // namespace ck
