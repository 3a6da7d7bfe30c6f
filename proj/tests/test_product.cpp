#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ck/errors.hpp"
#include "ck/product.hpp"
#include "ck/quadrature.hpp"

using namespace ck;

namespace {
Word w(std::initializer_list<int> ls) {
    Word out;
    for (int l : ls) out.push_back(static_cast<Letter>(l - 1));
    return out;
}
} // namespace

TEST_CASE("product operator is symmetric with the expected block spectrum") {
    auto O2 = full_shift(2);
    auto P = build_product(O2, {}, make_default_pair(O2), 0.5, {2, 2});
    auto D = P.D();
    CHECK(max_abs_on_interior(D - D.adjoint(), P.basis->max_depth) == 0.0);

    // (0,0,circ) indices carry D_geom = 0 and conn weight |v|^s
    for (size_t c = 0; c < P.basis->size(); ++c) {
        const ProdIndex& ix = P.basis->labels[c];
        if (ix.k == 0 && ix.n == 0) CHECK(P.D_geom.m.coeff(int(c), int(c)) == 0.0);
    }

    // dense eigensolve oracle: eigenvalues on a 2-dim (v, +/-) cell with k>0
    // are +/- sqrt(psi^2 + |v|^{2s})
    Eigen::MatrixXd dense(D.m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    for (size_t c = 0; c < P.basis->size(); ++c) {
        const ProdIndex& ix = P.basis->labels[c];
        if (ix.k == 0 || ix.sign < 0) continue;
        ProdIndex partner = ix;
        partner.sign = -1;
        if (P.basis->find(partner) < 0) continue;
        const double psi = -std::llabs(ix.n) - ix.k;
        const double lam = std::sqrt(psi * psi + std::pow(double(ix.v.size()), 2 * P.s));
        // lam must appear in the spectrum (up to numerical eps)
        double best = 1e300;
        for (int e = 0; e < es.eigenvalues().size(); ++e)
            best = std::min(best, std::abs(es.eigenvalues()[e] - lam));
        CHECK(best < 1e-9);
    }

    CHECK_THROWS_AS(build_product(O2, {}, make_default_pair(O2), 1.0, {2, 2}), Error);
}

TEST_CASE("chi structure relations hold exactly") {
    for (const auto& A : {full_shift(2), suq2_matrix()}) {
        auto P = build_product(A, {}, make_default_pair(A), 0.5, {4, 4});
        auto rep = chi_structure_check(P);
        CHECK(rep.defect_extend == 0.0);
        CHECK(rep.defect_adjoint == 0.0);
        CHECK(rep.defect_root_split == 0.0);
        CHECK(rep.defect_pi == 0.0);
    }
}

TEST_CASE("connection commutator: closed form, support, block norms") {
    auto O2 = full_shift(2);
    for (double s : {0.25, 0.5, 0.75}) {
        auto P = build_product(O2, {}, make_default_pair(O2), s, {4, 4});
        for (int i = 0; i < 2; ++i) {
            auto rep = connection_commutator(P, static_cast<Letter>(i));
            CHECK(rep.defect < 1e-12);
            CHECK(rep.support_leak == 0.0);
            CHECK(rep.max_block_excess <= 1e-12);
            CHECK(rep.bp_factor_excess <= 1e-12);
        }
    }
    // cylinder-compatible pair agreeing deeply: blocks vanish where they agree
    auto agree = make_default_pair(O2);
    agree.minus = agree.plus;
    auto P = build_product(O2, {}, agree, 0.5, {3, 3});
    for (int i = 0; i < 2; ++i) {
        auto rep = connection_commutator(P, static_cast<Letter>(i));
        auto C = P.D_conn * P.S[i] - P.S[i] * P.D_conn;
        CHECK(max_abs_on_interior(C, P.bounds.max_nk - 1) == 0.0);
        CHECK(rep.defect < 1e-12);
    }
}

TEST_CASE("epsilon bounds") {
    auto O2 = full_shift(2);
    for (double s : {0.25, 0.5, 0.75}) {
        auto P = build_product(O2, {}, make_default_pair(O2), s, {4, 4});
        for (int i = 0; i < 2; ++i) {
            auto rep = epsilon_bound_check(P, static_cast<Letter>(i));
            // the principal part obeys the damped-norm estimate at every s
            CHECK(rep.left_principal <= 1.0 + 1e-9);
            CHECK(rep.right_principal <= 1.0 + 1e-9);
            // the full commutator obeys the corrected uniform bound
            CHECK(rep.left_full <= rep.corrected_bound + 1e-9);
            CHECK(rep.right_full <= rep.corrected_bound + 1e-9);
            if (s >= 0.5) {
                CHECK(rep.left_full <= 1.0 + 1e-9);
                CHECK(rep.right_full <= 1.0 + 1e-9);
            }
        }
    }
    // the mismatch part is real: at s = 0.25 the full left norm exceeds 1
    auto P = build_product(O2, {}, make_default_pair(O2), 0.25, {4, 4});
    auto rep = epsilon_bound_check(P, 0);
    CHECK(rep.left_full > 1.0);

    // shrinking the interior never increases the damped norm
    auto Pm = build_product(O2, {}, make_default_pair(O2), 0.5, {4, 4});
    auto C = Pm.D_conn * Pm.S[0] - Pm.S[0] * Pm.D_conn;
    auto D = Pm.D();
    auto D2 = D * D;
    auto R = diagonal_op<ProdIndex>(Pm.basis, [&](const ProdIndex& ix) {
        const int c = Pm.basis->find(ix);
        return std::pow(1.0 + D2.m.coeff(c, c), -Pm.s / 2.0);
    });
    auto RC = R * C;
    double prev = 1e300;
    for (long long interior : {3, 2, 1}) {
        const double nn = op_norm_on_interior(RC, interior);
        CHECK(nn <= prev + 1e-12);
        prev = nn;
    }
}

TEST_CASE("geometric commutator bound max(2, 2|lambda|-1)") {
    auto O2 = full_shift(2);
    for (const Word& lam : {Word{}, w({1}), w({1, 2})}) {
        auto P = build_product(O2, lam, make_default_pair(O2), 0.5, {3, 3});
        const double bound = std::max(2.0, 2.0 * double(lam.size()) - 1.0);
        for (int i = 0; i < 2; ++i)
            CHECK(geom_commutator_norm(P, static_cast<Letter>(i)) <= bound + 1e-9);
    }
}

TEST_CASE("rational class report") {
    auto O2 = full_shift(2);
    auto pair = make_default_pair(O2);
    // tau+(()) = 1^inf, tau-(()) = 2^inf: [beta_1] - [beta_2] = 0 in trivial K^1(O_2)
    auto rep = rational_class_report(O2, {}, pair);
    CHECK(int(rep.j_plus) == 0);
    CHECK(int(rep.j_minus) == 1);
    CHECK(rep.cls.is_zero());

    // same first letters give the zero class
    ChoicePair same{pair.plus, pair.plus, 1.0};
    CHECK(rational_class_report(O2, {}, same).cls.is_zero());

    // SU_q(2), lambda = "2", tau+ into C_2, tau- into C_1:
    // (A(2,2) - A(2,1)) [beta_2] = [beta_2], a generator of K^1 = Z
    auto S = suq2_matrix();
    ChoicePair tau{ChoiceFunction(S, ChoiceFunction::Rule::GreedyMax),
                   ChoiceFunction(S, ChoiceFunction::Rule::GreedyMin), 1.0};
    CHECK(tau.plus.value({}).letter(0) == 1);  // 2^inf
    CHECK(tau.minus.value({}).letter(0) == 0); // 1^inf
    auto rs = rational_class_report(S, w({2}), tau);
    CHECK(rs.coefficients == std::vector<long long>{0, 1});
    CHECK_FALSE(rs.cls.is_zero());
}

TEST_CASE("integral representation formula") {
    {
        auto rep = integral_formula_check({0.0}, 0.5, 1e-8);
        CHECK(rep.max_defect < 1e-8);
        CHECK(rep.estimates_ok);
    }
    {
        auto rep = integral_formula_check({0.0, 1.0, 2.0}, 0.25, 1e-7);
        CHECK(rep.max_defect < 1e-6);
        CHECK(rep.estimates_ok);
    }
    for (double r : {0.25, 0.5, 0.75}) {
        auto rep = integral_formula_check({0.0, 1.0, 2.0, 5.0}, r, 1e-7);
        CHECK(rep.max_defect < 1e-6);
        CHECK(rep.estimates_ok);
    }
}
