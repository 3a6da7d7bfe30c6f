#include "ck/groupoid.hpp"

#include <algorithm>
#include <numeric>

#include "ck/errors.hpp"

namespace ck {

long long kappa_scan(const EpPoint& x, long long n, const EpPoint& y) {
    const long long start = std::max<long long>(0, -n);
    const long long bound = start + static_cast<long long>(x.preperiod().size()) +
                            static_cast<long long>(y.preperiod().size()) +
                            static_cast<long long>(std::lcm(x.period().size(), y.period().size())) +
                            std::llabs(n) + 2;
    for (long long k = start; k <= bound; ++k) {
        if (x.shifted(static_cast<size_t>(n + k)) == y.shifted(static_cast<size_t>(k))) return k;
    }
    return -1;
}

GroupoidElement GroupoidElement::make(const AdjacencyMatrix& A, EpPoint x, long long n,
                                      EpPoint y) {
    if (!A.word_admissible(x.preperiod()) || !A.word_admissible(y.preperiod()))
        fail("InadmissiblePoint", "point not over this matrix");
    const long long k = kappa_scan(x, n, y);
    if (k < 0)
        fail("NotGroupoidElement", "no k with sigma^{n+k}(x) = sigma^k(y) within the scan bound");
    return GroupoidElement(std::move(x), n, std::move(y), k);
}

GroupoidElement GroupoidElement::compose(const AdjacencyMatrix& A,
                                         const GroupoidElement& other) const {
    if (!(y_ == other.x_)) fail("NotComposable", "d(first) != r(second)");
    return make(A, x_, n_ + other.n_, other.y_);
}

GroupoidElement GroupoidElement::inverse(const AdjacencyMatrix& A) const {
    return make(A, y_, -n_, x_);
}

bool in_Y_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda) {
    if (g.kappa() != 0) return false;
    const long long L = static_cast<long long>(lambda.size());
    if (g.n() < L) return false;
    if (!lambda.empty() && !A.at(lambda.back(), g.y().letter(0)))
        return false; // lambda.y is not even a point
    EpPoint lhs = g.x().shifted(static_cast<size_t>(g.n() - L));
    EpPoint rhs = lambda.empty() ? g.y() : g.y().with_prefix(A, lambda);
    return lhs == rhs;
}

long long psi_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda) {
    if (g.kappa() == 0) return in_Y_lambda(A, g, lambda) ? g.n() : -g.n();
    return -std::llabs(g.n()) - g.kappa();
}

long long a_lambda_case_table(const AdjacencyMatrix& A, const GroupoidElement& g,
                              const Word& lambda) {
    const long long n = g.n();
    const long long kap = g.kappa();
    const bool in_G0 = (kap == 0);
    const long long L = static_cast<long long>(lambda.size());
    if (L > 0) {
        if (in_Y_lambda(A, g, lambda)) return n == L ? 2 * L - 1 : 1;
        if (in_G0 && n > 0) return -1;
        if (n <= 0 && n + kap == 0) return 2;
        if (n > 0 && !in_G0) return -1;
        return 1; // n <= 0 and n + kappa > 0
    }
    // lambda = (): on units the shifted element (sigma x, -1, x) has kappa 1,
    // so the value is 2, same bucket as the other c + kappa = 0 elements.
    if (in_G0 && n > 0) return 1;
    if (n <= 0 && n + kap == 0) return 2;
    if (n > 0) return -1; // off G^0
    return 1;             // n <= 0, n + kappa > 0
}

long long a_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda,
                   bool check_case_table) {
    GroupoidElement shifted = GroupoidElement::make(A, g.x().shifted(1), g.n() - 1, g.y());
    const long long direct = psi_lambda(A, g, lambda) - psi_lambda(A, shifted, lambda);
    if (check_case_table) {
        const long long table = a_lambda_case_table(A, g, lambda);
        if (table != direct)
            fail("CaseTableMismatch", "a_lambda definition " + std::to_string(direct) +
                                          " vs case table " + std::to_string(table));
    }
    return direct;
}

EpPoint fiber_range_point(const AdjacencyMatrix& A, const FiberElement& f, const EpPoint& omega) {
    EpPoint tail = omega.shifted(static_cast<size_t>(f.cut));
    return f.prefix.empty() ? tail : tail.with_prefix(A, f.prefix);
}

GroupoidElement fiber_to_groupoid(const AdjacencyMatrix& A, const FiberElement& f,
                                  const EpPoint& omega) {
    return GroupoidElement::make(A, fiber_range_point(A, f, omega), f.n(), omega);
}

std::vector<FiberElement> enumerate_fiber(const AdjacencyMatrix& A, const EpPoint& omega,
                                          int max_prefix, int max_cut, std::uint64_t cap) {
    if (max_prefix < 0 || max_cut < 0) fail("BadBounds", "fiber bounds must be >= 0");
    WordTable t = enumerate_words(A, max_prefix, cap);
    std::vector<FiberElement> out;
    std::uint64_t count = 0;
    for (long long k = 0; k <= max_cut; ++k) {
        const Letter junction = omega.letter(static_cast<size_t>(k)); // omega_{k+1}
        for (int l = 0; l <= max_prefix; ++l)
            for (const Word& mu : t.words_by_length[l]) {
                if (!mu.empty() && !A.at(mu.back(), junction)) continue;
                FiberElement f{mu, k};
                // Canonical iff the cut equals kappa of the represented element.
                EpPoint x = fiber_range_point(A, f, omega);
                if (kappa_scan(x, f.n(), omega) != k) continue;
                out.push_back(std::move(f));
                if (++count > cap)
                    fail("BlowupGuard", "fiber enumeration exceeds cap " + std::to_string(cap));
            }
    }
    return out;
}

} // namespace ck
