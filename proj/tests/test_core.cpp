#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ck/adjacency.hpp"
#include "ck/errors.hpp"
#include "ck/point.hpp"
#include "ck/word_table.hpp"

using namespace ck;

namespace {
Word w(std::initializer_list<int> ls) { // 1-based convenience
    Word out;
    for (int l : ls) out.push_back(static_cast<Letter>(l - 1));
    return out;
}
} // namespace

TEST_CASE("validate_matrix accepts and caches sums") {
    auto A = AdjacencyMatrix::validate({{1, 1}, {1, 1}});
    CHECK(A.n() == 2);
    CHECK(A.col_sum(0) == 2);
    CHECK(A.col_sum(1) == 2);

    auto S = suq2_matrix();
    CHECK(S.col_sum(0) == 1);
    CHECK(S.col_sum(1) == 2);
    CHECK_FALSE(S.irreducible());
}

TEST_CASE("validate_matrix rejects bad input") {
    CHECK_THROWS_WITH_AS(AdjacencyMatrix::validate({{1, 0}, {0, 0}}),
                         doctest::Contains("ZeroRow"), Error);
    // the same matrix also has a zero column; row check fires first by order
    CHECK_THROWS_WITH_AS(AdjacencyMatrix::validate({{1, 1}, {0, 0}}),
                         doctest::Contains("ZeroRow"), Error);
    CHECK_THROWS_WITH_AS(AdjacencyMatrix::validate({{1, 0}, {1, 0}}),
                         doctest::Contains("ZeroColumn"), Error);
    CHECK_THROWS_WITH_AS(AdjacencyMatrix::validate({{2, 1}, {1, 1}}),
                         doctest::Contains("NonBinaryEntry"), Error);
    CHECK_THROWS_WITH_AS(AdjacencyMatrix::validate({{1, 1}, {1}}), doctest::Contains("NotSquare"),
                         Error);
}

TEST_CASE("enumerate_words counts and order") {
    auto O2 = full_shift(2);
    auto t = enumerate_words(O2, 2);
    CHECK(t.counts == std::vector<std::uint64_t>{1, 2, 4});
    CHECK(t.words_by_length[2] ==
          std::vector<Word>{w({1, 1}), w({1, 2}), w({2, 1}), w({2, 2})});

    auto ts = enumerate_words(suq2_matrix(), 3);
    CHECK(ts.counts[3] == 4); // phi(l) = l + 1

    auto t3 = enumerate_words(full_shift(3), 2);
    CHECK(t3.counts[2] == 9); // phi(k) = N^k

    // phi(l) equals the total of all entries of A^{l-1}
    for (const auto& A : {O2, suq2_matrix(), free_group_matrix(2), ad_matrix(2)}) {
        auto tt = enumerate_words(A, 5);
        CHECK(tt.counts == phi_by_matrix_power(A, 5));
    }
}

TEST_CASE("blowup guard fires") {
    CHECK_THROWS_WITH_AS(enumerate_words(full_shift(4), 12, 1000),
                         doctest::Contains("BlowupGuard"), Error);
}

TEST_CASE("canonical forms of eventually periodic points") {
    auto O2 = full_shift(2);
    // period not primitive
    auto x = EpPoint::make(O2, {}, w({1, 2, 1, 2}));
    CHECK(x.period() == w({1, 2}));
    // preperiod absorbed into a rotation
    auto y = EpPoint::make(O2, w({2}), w({1, 2}));
    CHECK(y.preperiod().empty());
    CHECK(y.period() == w({2, 1}));
    // idempotence: canonical of canonical is itself
    auto z = EpPoint::make(O2, y.preperiod(), y.period());
    CHECK(z == y);
    // equality across representatives
    auto a = EpPoint::make(O2, w({1}), w({2, 1}));
    auto b = EpPoint::make(O2, {}, w({1, 2}));
    CHECK(a == b);
}

TEST_CASE("point admissibility is enforced") {
    auto S = suq2_matrix();
    CHECK_THROWS_AS(EpPoint::make(S, w({2}), w({1})), Error);       // junction 2->1 dead
    CHECK_THROWS_AS(EpPoint::make(S, {}, w({1, 2})), Error);        // wrap 2->1 dead
    CHECK_NOTHROW(EpPoint::make(S, w({1, 1}), w({2})));
}

TEST_CASE("metric distance") {
    auto O2 = full_shift(2);
    auto x = EpPoint::make(O2, w({1}), w({2}));
    auto y = EpPoint::make(O2, w({1, 1}), w({2}));
    CHECK(metric_distance(x, x) == 0.0);
    CHECK(metric_distance(x, y) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

    // diam(C_mu) = e^{-|mu|}: points of C_mu differing right after mu
    auto t = enumerate_words(O2, 3);
    for (const Word& mu : t.words_by_length[2]) {
        double diam = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                auto p = EpPoint::periodic(O2, Word{static_cast<Letter>(j)}).with_prefix(O2, mu);
                auto q = EpPoint::periodic(O2, Word{static_cast<Letter>(k)}).with_prefix(O2, mu);
                diam = std::max(diam, metric_distance(p, q));
            }
        CHECK(diam <= std::exp(-double(mu.size())) + 1e-15);
        CHECK(diam == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
    }
}

TEST_CASE("delta_A") {
    for (int n : {2, 3, 4}) {
        auto d = delta_A(full_shift(n));
        CHECK(d.delta == doctest::Approx(std::log(double(n))).epsilon(1e-10));
        CHECK_FALSE(d.used_dense_fallback);
    }
    auto ds = delta_A(suq2_matrix());
    CHECK(std::abs(ds.delta) < 1e-10); // polynomial word growth
    CHECK(ds.used_dense_fallback);     // defective dominant eigenvalue stalls the iteration
    auto df = delta_A(free_group_matrix(2));
    CHECK(df.delta == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("condition (I)") {
    auto r2 = condition_I(full_shift(2));
    CHECK(r2.holds);
    REQUIRE(r2.witnesses.size() == 2);
    CHECK(r2.witnesses[0].loop1 != r2.witnesses[0].loop2);

    auto rs = condition_I(suq2_matrix());
    CHECK_FALSE(rs.holds);
    CHECK(rs.failing_letter.has_value());
    CHECK(*rs.failing_letter == 0); // first failing letter

    CHECK(condition_I(ad_matrix(2)).holds);
}

TEST_CASE("minimal words") {
    auto O2 = full_shift(2);
    CHECK(is_minimal_word(O2, w({1})));
    CHECK(is_minimal_word(O2, w({1, 2})));
    auto S = suq2_matrix();
    CHECK(is_minimal_word(S, w({2})));
    CHECK_FALSE(is_minimal_word(S, w({2, 2}))); // C_2 = C_22, unique follower
    CHECK(is_minimal_word(S, w({1, 2})));
}

TEST_CASE("shifts") {
    auto O2 = full_shift(2);
    CHECK(shift_word(w({1, 2, 1})) == w({2, 1}));
    CHECK_THROWS_AS(shift_word(Word{}), Error);
    auto x = EpPoint::make(O2, w({1}), w({2}));
    CHECK(x.shifted() == EpPoint::periodic(O2, w({2})));
    CHECK(EpPoint::periodic(O2, w({1, 2})).shifted() == EpPoint::periodic(O2, w({2, 1})));
}

TEST_CASE("phi partial sums stay under the geometric tail bound past delta") {
    for (const auto& A : {full_shift(2), free_group_matrix(2), ad_matrix(2)}) {
        auto d = delta_A(A);
        auto t = enumerate_words(A, 12);
        const double s = d.delta + 0.3;
        double cmax = 0.0;
        for (int k = 1; k <= 12; ++k)
            cmax = std::max(cmax, double(t.counts[k]) / std::pow(d.rho, k));
        double partial = 0.0;
        const double q = d.rho * std::exp(-s);
        REQUIRE(q < 1.0);
        for (int k = 0; k <= 12; ++k) {
            const double inc = double(t.counts[k]) * std::exp(-s * k);
            CHECK(inc <= cmax * std::pow(q, k) * (1.0 + 1e-12));
            partial += inc;
        }
        CHECK(partial <= (cmax + 1.0) / (1.0 - q));
    }
}

TEST_CASE("cylinder partition at each level") {
    auto S = suq2_matrix();
    auto t = enumerate_words(S, 4);
    for (int l = 0; l < 4; ++l)
        for (const Word& mu : t.words_by_length[l]) {
            size_t kids = 0;
            for (const Word& nu : t.words_by_length[l + 1]) {
                const bool is_child = std::equal(mu.begin(), mu.end(), nu.begin());
                if (is_child) ++kids;
            }
            const size_t expect =
                mu.empty() ? size_t(S.n()) : size_t(S.followers(mu.back()).size());
            CHECK(kids == expect);
        }
}
