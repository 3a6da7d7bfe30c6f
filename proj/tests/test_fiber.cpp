#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ck/errors.hpp"
#include "ck/fiber_rep.hpp"

using namespace ck;

namespace {
Word w(std::initializer_list<int> ls) {
    Word out;
    for (int l : ls) out.push_back(static_cast<Letter>(l - 1));
    return out;
}
} // namespace

TEST_CASE("kernel of D_lambda is one-dimensional, spanned by the unit") {
    auto O2 = full_shift(2);
    for (const auto& omega : {EpPoint::periodic(O2, w({1})), EpPoint::periodic(O2, w({1, 2}))})
        for (const Word& lam : {Word{}, w({1}), w({1, 2})}) {
            auto rep = build_fiber_rep(O2, omega, lam, 4, 3);
            CHECK(check_phase_identity(rep).kernel_dim == 1);
            const int unit = rep.basis->find(FiberElement{{}, 0});
            CHECK(rep.D.m.coeff(unit, unit) == 0.0);
        }
}

TEST_CASE("phase identity sign(D) = 2WW^* +/- P_omega - 1") {
    auto O2 = full_shift(2);
    auto S = suq2_matrix();
    struct Case {
        AdjacencyMatrix A;
        EpPoint omega;
    };
    std::vector<Case> cases = {{O2, EpPoint::periodic(O2, w({1}))},
                               {O2, EpPoint::periodic(O2, w({2, 1}))},
                               {S, EpPoint::periodic(S, w({2}))},
                               {S, EpPoint::periodic(S, w({1}))}};
    for (const auto& cs : cases) {
        WordTable t = enumerate_words(cs.A, 2);
        for (const auto& lvl : t.words_by_length)
            for (const Word& lam : lvl) {
                auto rep = build_fiber_rep(cs.A, cs.omega, lam, 5, 3);
                auto ph = check_phase_identity(rep);
                CHECK(ph.kernel_dim == 1);
                CHECK(ph.phase_defect == 0.0);
                CHECK(ph.plus_sign == !lam.empty());
            }
    }
}

TEST_CASE("dead junction: W vanishes and the phase degenerates to P_omega - 1") {
    // SU_q(2), lambda ends in 2, omega starts in 1: A(2,1) = 0
    auto S = suq2_matrix();
    auto omega = EpPoint::periodic(S, w({1}));
    auto rep = build_fiber_rep(S, omega, w({2}), 5, 3);
    CHECK(rep.W.m.nonZeros() == 0);
    auto ph = check_phase_identity(rep);
    CHECK(ph.phase_defect == 0.0);
}

TEST_CASE("commutator norm bound max(2, 2|lambda|-1)") {
    auto O2 = full_shift(2);
    auto omega = EpPoint::periodic(O2, w({1}));
    for (const Word& lam : {Word{}, w({1}), w({1, 2})}) {
        auto rep = build_fiber_rep(O2, omega, lam, 5, 3);
        const double bound = std::max<double>(2.0, 2.0 * double(lam.size()) - 1.0);
        for (int i = 0; i < 2; ++i)
            CHECK(commutator_norm(rep, static_cast<Letter>(i)) <= bound + 1e-9);
    }
    // the bound 2 is attained for lambda = () on O_2 along a c+kappa = 0 direction
    auto rep = build_fiber_rep(O2, omega, {}, 5, 3);
    double best = 0.0;
    for (int i = 0; i < 2; ++i) best = std::max(best, commutator_norm(rep, Letter(i)));
    CHECK(best == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("SU_q(2) compression index of S_2 + S_1 S_1^* is -1") {
    auto S = suq2_matrix();
    auto omega = EpPoint::periodic(S, w({2}));
    auto ci = suq2_compression_index(S, omega, w({2}), 5, 3);
    CHECK(ci.index == -1);
    CHECK(ci.dim_ker == 0);
    CHECK(ci.dim_coker == 1);
    CHECK(ci.stable);
}

TEST_CASE("fiber S_i recanonicalizes across the cut") {
    auto O2 = full_shift(2);
    auto omega = EpPoint::periodic(O2, w({1}));
    auto rep = build_fiber_rep(O2, omega, {}, 3, 2);
    // S_1 applied to ((), 1) = (sigma omega, -1, omega) gives (1^inf, 0, omega) = ((), 0)
    const int src = rep.basis->find(FiberElement{{}, 1});
    const int dst = rep.basis->find(FiberElement{{}, 0});
    REQUIRE(src >= 0);
    REQUIRE(dst >= 0);
    CHECK(rep.S[0].m.coeff(dst, src) == 1.0);
    // while S_2 extends the prefix: ((), 1) -> (2, 1)
    const int dst2 = rep.basis->find(FiberElement{w({2}), 1});
    CHECK(rep.S[1].m.coeff(dst2, src) == 1.0);
}
