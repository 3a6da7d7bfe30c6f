#include "ck/word_table.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

#include "ck/errors.hpp"

namespace ck {

std::uint64_t WordTable::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::optional<size_t> WordTable::index_of(const Word& w) const {
    const size_t l = w.size();
    if (l >= words_by_length.size()) return std::nullopt;
    const auto& lvl = words_by_length[l];
    auto it = std::lower_bound(lvl.begin(), lvl.end(), w);
    if (it == lvl.end() || *it != w) return std::nullopt;
    size_t base = 0;
    for (size_t k = 0; k < l; ++k) base += words_by_length[k].size();
    return base + static_cast<size_t>(it - lvl.begin());
}

WordTable enumerate_words(const AdjacencyMatrix& A, int depth, std::uint64_t cap) {
    if (depth < 0) fail("BadDepth", "depth must be >= 0");
    WordTable t{A, depth, {}, {}};
    t.words_by_length.resize(depth + 1);
    t.counts.resize(depth + 1, 0);
    t.words_by_length[0] = {Word{}};
    t.counts[0] = 1;
    std::uint64_t running = 1;
    for (int l = 1; l <= depth; ++l) {
        auto& prev = t.words_by_length[l - 1];
        auto& cur = t.words_by_length[l];
        for (const Word& w : prev) {
            if (w.empty()) {
                for (int j = 0; j < A.n(); ++j) cur.push_back(Word{static_cast<Letter>(j)});
            } else {
                for (Letter j : A.followers(w.back())) {
                    Word e = w;
                    e.push_back(j);
                    cur.push_back(std::move(e));
                }
            }
        }
        // Extensions of a sorted level in ascending letter order stay sorted.
        t.counts[l] = cur.size();
        running += cur.size();
        if (running > cap)
            fail("BlowupGuard", "estimated enumeration size " + std::to_string(running) +
                                    " exceeds cap " + std::to_string(cap));
    }
    return t;
}

std::vector<std::uint64_t> phi_by_matrix_power(const AdjacencyMatrix& A, int depth) {
    const int n = A.n();
    std::vector<std::uint64_t> phi(depth + 1, 0);
    phi[0] = 1;
    if (depth >= 1) phi[1] = static_cast<std::uint64_t>(n);
    std::vector<std::uint64_t> P(static_cast<size_t>(n) * n, 0); // A^{l-1}
    for (int i = 0; i < n; ++i) P[static_cast<size_t>(i) * n + i] = 1;
    for (int l = 1; l <= depth; ++l) {
        std::uint64_t s = 0;
        for (auto v : P) s += v;
        phi[l] = s;
        if (l == depth) break;
        std::vector<std::uint64_t> Q(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (!P[static_cast<size_t>(i) * n + k]) continue;
                for (int j = 0; j < n; ++j)
                    if (A.at(static_cast<Letter>(k), static_cast<Letter>(j)))
                        Q[static_cast<size_t>(i) * n + j] += P[static_cast<size_t>(i) * n + k];
            }
        P = std::move(Q);
    }
    return phi;
}

Word shift_word(const Word& w) {
    if (w.empty()) fail("EmptyWord", "cannot shift the empty word");
    return Word(w.begin() + 1, w.end());
}

bool cylinder_equal_extension(const AdjacencyMatrix& A, const Word& w, const Word& v) {
    if (w.empty()) return v.empty(); // C_() is the whole space, never a proper cylinder
    Letter cur = w.back();
    for (Letter step : v) {
        auto f = A.followers(cur);
        if (f.size() != 1 || f[0] != step) return false;
        cur = step;
    }
    return true;
}

bool is_minimal_word(const AdjacencyMatrix& A, const Word& w) {
    if (!A.word_admissible(w)) fail("InadmissibleWord", show_word(w));
    for (size_t p = 1; p < w.size(); ++p) { // proper nonempty prefixes
        Word prefix(w.begin(), w.begin() + p);
        Word tail(w.begin() + p, w.end());
        if (cylinder_equal_extension(A, prefix, tail)) return false;
    }
    return true;
}

namespace {

// All loops based at m with length <= maxlen (first = last = m, interior != m).
std::vector<Word> loops_based_at(const AdjacencyMatrix& A, Letter m, int maxlen) {
    std::vector<Word> out;
    std::vector<Word> frontier = {Word{m}};
    for (int len = 2; len <= maxlen && out.size() < 2; ++len) {
        std::vector<Word> next;
        for (const Word& p : frontier)
            for (Letter j : A.followers(p.back())) {
                Word q = p;
                q.push_back(j);
                if (j == m) {
                    out.push_back(q);
                    if (out.size() >= 2) return out;
                } else {
                    next.push_back(std::move(q));
                }
            }
        frontier = std::move(next);
    }
    return out;
}

} // namespace

ConditionIWitness condition_I(const AdjacencyMatrix& A) {
    const int n = A.n();
    // Any letter with two distinct based loops finds both at length <= 2N+2:
    // a longer loop contains a cycle in its interior and pumps down.
    const int maxlen = 2 * n + 2;
    std::vector<std::vector<Word>> loops(n);
    for (int m = 0; m < n; ++m) loops[m] = loops_based_at(A, static_cast<Letter>(m), maxlen);

    // BFS over letters reachable from j, remembering one reaching word.
    ConditionIWitness res;
    res.holds = true;
    for (int j = 0; j < n; ++j) {
        std::map<Letter, Word> seen;
        std::vector<Letter> frontier = {static_cast<Letter>(j)};
        seen[static_cast<Letter>(j)] = Word{static_cast<Letter>(j)};
        std::optional<Letter> base;
        while (!frontier.empty() && !base) {
            std::vector<Letter> next;
            for (Letter u : frontier) {
                if (loops[u].size() >= 2) {
                    base = u;
                    break;
                }
                for (Letter v : A.followers(u))
                    if (!seen.count(v)) {
                        Word path = seen[u];
                        path.push_back(v);
                        seen[v] = path;
                        next.push_back(v);
                    }
            }
            frontier = std::move(next);
        }
        if (!base) {
            res.holds = false;
            res.failing_letter = static_cast<Letter>(j);
            res.witnesses.clear();
            return res;
        }
        res.witnesses.push_back({static_cast<Letter>(j), seen[*base], loops[*base][0],
                                 loops[*base][1]});
    }
    return res;
}

DeltaResult delta_A(const AdjacencyMatrix& A, double tol, int max_iter,
                    bool allow_dense_fallback) {
    const int n = A.n();
    Eigen::MatrixXd B(n, n); // A + I: keeps the iteration aperiodic
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = (A.at(i, j) ? 1.0 : 0.0) + (i == j ? 1.0 : 0.0);

    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
    DeltaResult out;
    double res_old = 1e300;
    int stall = 0;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = B * v;
        const double nrm = w.norm();
        if (nrm == 0.0) fail("NoConvergence", "iteration collapsed");
        w /= nrm;
        const double theta = w.dot(B * w);
        const double res = (B * w - theta * w).lpNorm<Eigen::Infinity>();
        v = w;
        out.iterations = it;
        out.rho = theta - 1.0;
        out.residual = res;
        if (res < tol * std::max(1.0, theta)) {
            out.delta = std::log(out.rho);
            return out;
        }
        if (it % 64 == 0) {
            if (res > 0.75 * res_old) {
                if (++stall >= 8) break; // sublinear decay: defective or reducible
            } else {
                stall = 0;
            }
            res_old = res;
        }
    }
    if (!allow_dense_fallback)
        fail("NoConvergence", "power iteration stalled after " +
                                  std::to_string(out.iterations) + " iterations");
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = A.at(i, j) ? 1.0 : 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    out.rho = rho;
    out.delta = std::log(rho);
    out.used_dense_fallback = true;
    return out;
}

} // namespace ck
