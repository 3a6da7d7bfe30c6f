#include "ck/measure.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "ck/errors.hpp"

namespace ck {

PerronData perron(const AdjacencyMatrix& A, double tol, int max_iter) {
    const int n = A.n();
    Eigen::MatrixXd M(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M(i, j) = A.at(i, j) ? 1.0 : 0.0;
            B(i, j) = M(i, j) + (i == j ? 1.0 : 0.0);
        }

    PerronData out;
    out.reducible = !A.irreducible();

    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
    double res_old = 1e300;
    int stall = 0;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = B * v;
        w /= w.lpNorm<1>();
        const double theta = w.dot(M * w) / w.dot(w);
        const double res = (M * w - theta * w).lpNorm<Eigen::Infinity>();
        v = w;
        out.iterations = it;
        out.lambda = theta;
        out.residual = res;
        if (res < tol * std::max(1.0, theta)) {
            converged = true;
            break;
        }
        if (it % 64 == 0) {
            if (res > 0.75 * res_old) {
                if (++stall >= 8) break;
            } else {
                stall = 0;
            }
            res_old = res;
        }
    }
    if (!converged) {
        // Defective or reducible dominant part: take the dense eigendata.
        Eigen::EigenSolver<Eigen::MatrixXd> es(M);
        int best = 0;
        double rho = -1.0;
        for (int i = 0; i < n; ++i)
            if (std::abs(es.eigenvalues()[i]) > rho) {
                rho = std::abs(es.eigenvalues()[i]);
                best = i;
            }
        Eigen::VectorXd ev = es.eigenvectors().col(best).real();
        if (ev.sum() < 0) ev = -ev;
        for (int i = 0; i < n; ++i) ev[i] = std::max(ev[i], 0.0);
        v = ev / ev.lpNorm<1>();
        out.lambda = rho;
        out.residual = (M * v - rho * v).lpNorm<Eigen::Infinity>();
        out.used_dense_fallback = true;
    }
    v /= v.lpNorm<1>();
    out.v.assign(v.data(), v.data() + n);
    return out;
}

double ConformalMeasure::delta() const { return std::log(p_.lambda); }

double ConformalMeasure::vol_cylinder(const Word& w) const {
    if (!A_.word_admissible(w)) fail("InadmissibleWord", show_word(w));
    if (w.empty()) return 1.0;
    return std::pow(p_.lambda, -static_cast<double>(w.size() - 1)) * p_.v[w.back()];
}

double ConformalMeasure::conformality_residual(int depth) const {
    // int L_sigma chi_{C_mu} dmu computed directly from preimage cylinders,
    // compared against e^{delta} vol(C_mu).
    WordTable t = enumerate_words(A_, depth);
    double worst = 0.0;
    for (int l = 0; l <= depth; ++l)
        for (const Word& mu : t.words_by_length[l]) {
            double lhs = 0.0;
            if (mu.empty()) {
                for (int j = 0; j < A_.n(); ++j)
                    for (Letter k : A_.followers(static_cast<Letter>(j)))
                        lhs += vol_cylinder(Word{k});
            } else if (mu.size() == 1) {
                for (Letter k : A_.followers(mu[0])) lhs += vol_cylinder(Word{k});
            } else {
                lhs = vol_cylinder(shift_word(mu));
            }
            const double rhs = p_.lambda * vol_cylinder(mu);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

double ConformalMeasure::kms_monomial(const Word& mu, const Word& nu) const {
    if (!A_.word_admissible(mu)) fail("InadmissibleWord", show_word(mu));
    if (!A_.word_admissible(nu)) fail("InadmissibleWord", show_word(nu));
    if (mu != nu) return 0.0;
    return vol_cylinder(mu);
}

double ConformalMeasure::c_of_last_letter(Letter l) const {
    double s = 0.0;
    for (int j = 0; j < A_.n(); ++j)
        if (A_.at(l, static_cast<Letter>(j))) s += p_.v[j];
    if (s <= 0.0)
        fail("DegenerateMeasure", "c-constant undefined: letter " + std::to_string(int(l) + 1) +
                                      " has zero-mass followers (reducible matrix)");
    return 1.0 / std::sqrt(s);
}

double ConformalMeasure::c_constant(const Word& mu) const {
    if (!A_.word_admissible(mu)) fail("InadmissibleWord", show_word(mu));
    if (mu.empty()) return 1.0;
    return c_of_last_letter(mu.back());
}

double ConformalMeasure::modular_function(long long n) const {
    return std::pow(p_.lambda, -static_cast<double>(n));
}

} // namespace ck
