#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ck/errors.hpp"
#include "ck/groupoid.hpp"

using namespace ck;

namespace {
Word w(std::initializer_list<int> ls) {
    Word out;
    for (int l : ls) out.push_back(static_cast<Letter>(l - 1));
    return out;
}
} // namespace

TEST_CASE("composition, inversion, cocycle") {
    auto O2 = full_shift(2);
    auto p2 = EpPoint::periodic(O2, w({2}));
    auto p12 = p2.with_prefix(O2, w({1}));
    auto g = GroupoidElement::make(O2, p12, 1, p2);
    auto h = GroupoidElement::make(O2, p2, -1, p12);
    auto gh = g.compose(O2, h);
    CHECK(gh.n() == 0);
    CHECK(gh.x() == p12);
    CHECK(gh.y() == p12);

    auto gi = g.inverse(O2);
    auto unit = g.compose(O2, gi);
    CHECK(unit.is_unit());
    CHECK_THROWS_AS(g.compose(O2, g), Error); // d(g) != r(g)

    // cocycle additivity on random composable pairs built from word prefixes
    std::mt19937 rng(7);
    auto t = enumerate_words(O2, 4);
    auto rand_word = [&](int maxlen) {
        const int l = int(rng() % (maxlen + 1));
        const auto& lvl = t.words_by_length[l];
        return lvl[rng() % lvl.size()];
    };
    for (int trial = 0; trial < 100; ++trial) {
        Word per = rand_word(3);
        if (per.empty()) per = w({1});
        auto y = EpPoint::periodic(O2, per);
        Word a = rand_word(4), b = rand_word(4), c = rand_word(4);
        auto mid = y.with_prefix(O2, b);
        auto top = mid.with_prefix(O2, a);
        auto bot = y.with_prefix(O2, c);
        auto g1 = GroupoidElement::make(O2, top, static_cast<long long>(a.size()), mid);
        auto g2 = GroupoidElement::make(
            O2, mid, static_cast<long long>(b.size()) - static_cast<long long>(c.size()), bot);
        auto g12 = g1.compose(O2, g2);
        CHECK(g12.n() == g1.n() + g2.n());
    }
}

TEST_CASE("kappa") {
    auto O2 = full_shift(2);
    auto p2 = EpPoint::periodic(O2, w({2}));
    auto p12 = p2.with_prefix(O2, w({1}));
    CHECK(GroupoidElement::make(O2, p2, 0, p2).kappa() == 0);
    CHECK(GroupoidElement::make(O2, p2, -1, p12).kappa() == 1);
    CHECK(GroupoidElement::make(O2, p12, 1, p2).kappa() == 0);

    // filtration property: kappa(xi^{-1}) = kappa(xi) + c(xi)
    auto omega = EpPoint::periodic(O2, w({1, 2}));
    for (const auto& f : enumerate_fiber(O2, omega, 3, 3)) {
        auto g = fiber_to_groupoid(O2, f, omega);
        CHECK(g.inverse(O2).kappa() == g.kappa() + g.n());
    }
}

TEST_CASE("rejects non-elements") {
    auto O2 = full_shift(2);
    auto p1 = EpPoint::periodic(O2, w({1}));
    auto p2 = EpPoint::periodic(O2, w({2}));
    CHECK_THROWS_WITH_AS(GroupoidElement::make(O2, p1, 0, p2),
                         doctest::Contains("NotGroupoidElement"), Error);
}

TEST_CASE("Y_lambda membership") {
    auto O2 = full_shift(2);
    auto x = EpPoint::periodic(O2, w({1}));
    auto unit = GroupoidElement::make(O2, x, 0, x);
    CHECK(in_Y_lambda(O2, unit, {}));
    CHECK_FALSE(in_Y_lambda(O2, unit, w({1})));

    auto p2 = EpPoint::periodic(O2, w({2}));
    auto e = GroupoidElement::make(O2, p2.with_prefix(O2, w({1, 2})), 2, p2);
    CHECK(in_Y_lambda(O2, e, w({1, 2})));
    CHECK_FALSE(in_Y_lambda(O2, e, w({1, 1})));
}

TEST_CASE("psi_lambda") {
    auto O2 = full_shift(2);
    auto x = EpPoint::periodic(O2, w({1}));
    auto unit = GroupoidElement::make(O2, x, 0, x);
    for (const Word& lam : {Word{}, w({1}), w({1, 2})}) CHECK(psi_lambda(O2, unit, lam) == 0);

    auto p2 = EpPoint::periodic(O2, w({2}));
    auto e = GroupoidElement::make(O2, p2, -1, p2.with_prefix(O2, w({1}))); // n=-1, kappa=1
    CHECK(psi_lambda(O2, e, w({1})) == -2);

    auto g = GroupoidElement::make(O2, x, 2, x); // (1^inf, 2, 1^inf)
    CHECK(psi_lambda(O2, g, {}) == 2);

    // psi_lambda > 0 exactly on Y_lambda with n > 0
    auto omega = EpPoint::periodic(O2, w({1, 2}));
    for (const Word& lam : {Word{}, w({1}), w({2, 1})})
        for (const auto& f : enumerate_fiber(O2, omega, 4, 3)) {
            auto gg = fiber_to_groupoid(O2, f, omega);
            const bool pos = psi_lambda(O2, gg, lam) > 0;
            CHECK(pos == (in_Y_lambda(O2, gg, lam) && gg.n() > 0));
        }
}

TEST_CASE("a_lambda against the case table") {
    auto O2 = full_shift(2);
    auto S = suq2_matrix();
    auto Ad = ad_matrix(2);

    // pinned values
    auto x = EpPoint::periodic(O2, w({1}));
    auto unit = GroupoidElement::make(O2, x, 0, x);
    auto pos = GroupoidElement::make(O2, x, 2, x);
    CHECK(a_lambda(O2, pos, {}) == 1);         // lambda = (): value 1 on G^0 with n > 0
    CHECK(a_lambda(O2, unit, {}) == 2);        // units: sigma-shift leaves G^0, c+kappa=0 bucket
    CHECK(a_lambda(O2, unit, w({1, 2})) == 2); // n <= 0, c + kappa = 0, lambda nonempty

    // |a_lambda| <= max(2, 2|lambda|-1), and the two routes agree on fibers
    struct CaseM {
        AdjacencyMatrix A;
        EpPoint omega;
    };
    std::vector<CaseM> cases = {{O2, EpPoint::periodic(O2, w({1, 2}))},
                                {O2, EpPoint::periodic(O2, w({1}))},
                                {S, EpPoint::periodic(S, w({2}))},
                                {Ad, EpPoint::periodic(Ad, w({1, 2}))}};
    for (auto& cs : cases)
        for (const Word& lam :
             {Word{}, Word{0}, Word{0, 1}}) {
            if (!cs.A.word_admissible(lam)) continue;
            const long long bound = std::max<long long>(2, 2 * (long long)lam.size() - 1);
            for (const auto& f : enumerate_fiber(cs.A, cs.omega, 4, 4)) {
                auto g = fiber_to_groupoid(cs.A, f, cs.omega);
                const long long a = a_lambda(cs.A, g, lam); // throws on table mismatch
                CHECK(std::llabs(a) <= bound);
            }
        }
}

TEST_CASE("fiber enumeration") {
    auto O2 = full_shift(2);
    auto omega1 = EpPoint::periodic(O2, w({1}));
    auto f = enumerate_fiber(O2, omega1, 1, 1);
    REQUIRE(f.size() == 5); // (,0) (1,0) (2,0) (,1) (2,1); (1,1) deduplicates to (,0)
    CHECK(f[0] == FiberElement{{}, 0});
    CHECK(f[1] == FiberElement{w({1}), 0});
    CHECK(f[2] == FiberElement{w({2}), 0});
    CHECK(f[3] == FiberElement{{}, 1});
    CHECK(f[4] == FiberElement{w({2}), 1});

    CHECK(enumerate_fiber(O2, omega1, 0, 0).size() == 1); // just the unit

    auto S = suq2_matrix();
    auto omega2 = EpPoint::periodic(S, w({2}));
    CHECK(enumerate_fiber(S, omega2, 2, 0).size() == 6); // junction filter: 1+2+3

    // collision-freeness: distinct canonical elements, distinct (x, n)
    for (const auto& omega : {omega1, EpPoint::periodic(O2, w({1, 2}))}) {
        auto fib = enumerate_fiber(O2, omega, 4, 3);
        std::set<std::pair<std::string, long long>> seen;
        for (const auto& fe : fib) {
            auto x = fiber_range_point(O2, fe, omega);
            CHECK(seen.emplace(x.str(), fe.n()).second);
        }
    }
}
