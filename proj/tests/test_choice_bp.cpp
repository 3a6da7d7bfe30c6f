#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ck/bp_triple.hpp"
#include "ck/choice.hpp"
#include "ck/errors.hpp"

using namespace ck;

namespace {
Word w(std::initializer_list<int> ls) {
    Word out;
    for (int l : ls) out.push_back(static_cast<Letter>(l - 1));
    return out;
}

AdjacencyMatrix random_matrix(std::mt19937& rng) {
    for (;;) {
        const int n = 2 + int(rng() % 3);
        std::vector<std::vector<int>> raw(n, std::vector<int>(n));
        for (auto& r : raw)
            for (auto& x : r) x = int(rng() % 2);
        try {
            return AdjacencyMatrix::validate(raw);
        } catch (const Error&) {
        }
    }
}
} // namespace

TEST_CASE("default pair: greedy rules and cylinder condition") {
    auto O2 = full_shift(2);
    auto pair = make_default_pair(O2);
    CHECK(pair.plus.value({}) == EpPoint::periodic(O2, w({1})));
    CHECK(pair.minus.value({}) == EpPoint::periodic(O2, w({2})));

    auto S = suq2_matrix();
    auto ps = make_default_pair(S);
    CHECK(ps.plus.value(w({2})) == EpPoint::periodic(S, w({2}))); // forced continuation
    CHECK(ps.minus.value(w({2})) == EpPoint::periodic(S, w({2})));

    for (const auto& A : {full_shift(2), suq2_matrix(), free_group_matrix(2), ad_matrix(2)}) {
        auto p = make_default_pair(A);
        CHECK_NOTHROW(check_cylinder_condition(p.plus, 6));
        CHECK_NOTHROW(check_cylinder_condition(p.minus, 6));
        CHECK(comparability_constant(p, 6) <= 1.0 + 1e-12);
    }
}

TEST_CASE("index pairing basics") {
    auto O2 = full_shift(2);
    // tau+ = tau- gives zero
    ChoicePair same{ChoiceFunction(O2, ChoiceFunction::Rule::GreedyMin),
                    ChoiceFunction(O2, ChoiceFunction::Rule::GreedyMin), 1.0};
    for (const Word& mu : {w({1}), w({1, 2}), w({2, 2, 1})})
        CHECK(index_pairing(same, mu) == 0);

    // antisymmetry under swapping the pair
    auto pair = make_default_pair(O2);
    ChoicePair swapped{pair.minus, pair.plus, 1.0};
    for (const Word& mu : {w({1}), w({2}), w({1, 2}), w({2, 1, 1})})
        CHECK(index_pairing(pair, mu) == -index_pairing(swapped, mu));

    // overrides strictly below |mu| change nothing... overrides at deeper
    // words never enter the counting formula
    ChoicePair deep = make_default_pair(O2);
    deep.plus.set_override(w({1, 2, 1}), EpPoint::periodic(O2, w({1, 2, 1})));
    CHECK(index_pairing(deep, w({1, 2})) == index_pairing(pair, w({1, 2})));
}

TEST_CASE("construct_tau_for yields pairing one") {
    auto O2 = full_shift(2);
    for (const Word& mu : {w({1}), w({1, 2}), w({2, 1, 1}), w({2, 2, 2})}) {
        auto tau = construct_tau_for(O2, mu);
        CHECK_NOTHROW(check_cylinder_condition(tau.plus, 4));
        CHECK_NOTHROW(check_cylinder_condition(tau.minus, 4));
        CHECK(index_pairing(tau, mu) == 1);
    }
    // SU_q(2): mu = 22 reduces to its minimal prefix 2
    auto S = suq2_matrix();
    auto tau = construct_tau_for(S, w({2, 2}));
    CHECK(index_pairing(tau, w({2, 2})) == 1);
    CHECK(index_pairing(tau, w({2})) == 1); // C_2 = C_22

    // every minimal mu with |mu| <= 3 on O_2 and A_{F_2}
    for (const auto& A : {full_shift(2), free_group_matrix(2)}) {
        auto t = enumerate_words(A, 3);
        for (int l = 1; l <= 3; ++l)
            for (const Word& mu : t.words_by_length[l]) {
                if (!is_minimal_word(A, mu)) continue;
                auto tau2 = construct_tau_for(A, mu);
                CHECK(index_pairing(tau2, mu) == 1);
            }
    }
}

TEST_CASE("pairing against the matrix trace oracle, random instances") {
    std::mt19937 rng(4711);
    int done = 0;
    while (done < 50) {
        auto A = random_matrix(rng);
        auto t = enumerate_words(A, 4);
        // random admissible mu with 1 <= |mu| <= 3
        const int l = 1 + int(rng() % 3);
        const auto& lvl = t.words_by_length[l];
        if (lvl.empty()) continue;
        const Word mu = lvl[rng() % lvl.size()];
        auto pair = make_default_pair(A);
        // random override at some word shallower than mu, staying cylindrical
        {
            const int lo = int(rng() % mu.size());
            const auto& olvl = t.words_by_length[lo];
            const Word nu = olvl[rng() % olvl.size()];
            ChoiceFunction alt(A, rng() % 2 ? ChoiceFunction::Rule::GreedyMax
                                            : ChoiceFunction::Rule::GreedyMin);
            pair.plus.set_override(nu, alt.value(nu));
        }
        const long long counted = index_pairing(pair, mu);
        // oracle: trace of pi_{tau+}(chi_{C_mu}) - pi_{tau-}(chi_{C_mu}) at
        // depth >= |mu| (the tail cancels by the cylinder condition)
        long long tr = 0;
        for (const auto& lvl2 : t.words_by_length)
            for (const Word& nu : lvl2) {
                tr += pair.plus.value(nu).starts_with(mu) ? 1 : 0;
                tr -= pair.minus.value(nu).starts_with(mu) ? 1 : 0;
            }
        CHECK(counted == tr);
        ++done;
    }
}

TEST_CASE("pairing depth independence") {
    auto O2 = full_shift(2);
    auto tau = construct_tau_for(O2, w({1, 2}));
    // recompute the trace oracle at several depths; all agree with the count
    for (int depth : {2, 3, 5}) {
        auto t = enumerate_words(O2, depth);
        long long tr = 0;
        for (const auto& lvl : t.words_by_length)
            for (const Word& nu : lvl) {
                tr += tau.plus.value(nu).starts_with(w({1, 2})) ? 1 : 0;
                tr -= tau.minus.value(nu).starts_with(w({1, 2})) ? 1 : 0;
            }
        CHECK(tr == 1);
    }
}

TEST_CASE("bp operator: heat trace, anticommutation, smallest eigenvalue") {
    auto O2 = full_shift(2);
    auto t = enumerate_words(O2, 6);
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
        BPTriple triple{make_default_pair(O2), s, 6};
        for (double time : {0.8, 1.5, 3.0}) {
            auto rep = bp_heat_trace(triple, t, time);
            CHECK(rep.matrix_trace == rep.closed_form); // identical float sums
        }
        auto b = spinor_basis(t);
        auto D = bp_operator(triple, t, b);
        auto G = bp_grading(b);
        CHECK(max_abs_on_interior(D * G + G * D, t.depth) == 0.0);
        // smallest nonzero singular value is 1^s = 1
        double smallest = 1e300;
        for (double x : singular_values(D))
            if (x > 1e-12) smallest = std::min(smallest, x);
        CHECK(smallest == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("heat trace is decreasing in t with geometric increments past delta") {
    auto O2 = full_shift(2);
    auto t = enumerate_words(O2, 10);
    BPTriple exp_triple{make_default_pair(O2), std::nullopt, 10};
    // exponential BP case at t > delta_A = log 2
    const double time = std::log(2.0) + 0.4;
    double prev = 1e300;
    for (double tt : {time, time * 1.5, time * 2.0}) {
        const double h = bp_heat_trace(exp_triple, t, tt).closed_form;
        CHECK(h < prev);
        prev = h;
    }
    // increments 2 phi(k) e^{-t e^{2k}} collapse super-geometrically; check
    // the partial sums settle (tail below a geometric envelope)
    double inc_prev = 1e300;
    for (int k = 1; k <= 10; ++k) {
        const double w = std::exp(double(k));
        const double inc = 2.0 * double(t.counts[k]) * std::exp(-time * w * w);
        CHECK(inc <= 0.5 * inc_prev); // deep increments underflow to exactly 0
        inc_prev = inc;
    }
}

TEST_CASE("commutator diagnostics") {
    auto O2 = full_shift(2);
    auto t = enumerate_words(O2, 8);
    BPTriple triple{make_default_pair(O2), 0.5, 8};
    auto rep = commutator_diagnostics(triple, t, w({1, 2}), 0);
    // rank bound 2(phi(0) + phi(1)) = 6
    CHECK(rep.rank_bound == 6);
    CHECK(rep.rank_commutator <= rep.rank_bound);
    CHECK(rep.log_comm_norm <= 1.0 + 1e-12);
    // exponential growth: value at |mu| = k is exactly (e-1) e^k
    REQUIRE(rep.exp_growth.size() >= 7);
    for (size_t k = 1; k <= rep.exp_growth.size(); ++k) {
        const double expect = (std::exp(1.0) - 1.0) * std::exp(double(k));
        CHECK(rep.exp_growth[k - 1] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(rep.exp_growth[k - 1] >= rep.exp_epsilon * std::exp(double(k)) * (1 - 1e-12));
    }
}
