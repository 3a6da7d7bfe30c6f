#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "ck/adjacency.hpp"
#include "ck/errors.hpp"
#include "ck/groupoid.hpp"

namespace ck {

// --- label types -----------------------------------------------------------

inline long long basis_depth(const Word& w) { return static_cast<long long>(w.size()); }
inline long long basis_depth(const FiberElement& f) { return f.depth(); }

inline std::string label_str(const Word& w) { return show_word(w); }
inline std::string label_str(const FiberElement& f) {
    return show_word(f.prefix) + "|" + std::to_string(f.cut);
}

struct PairWord { // basis of H_0 (x) H_0^T: c_mu S_mu (x) c_nu^T T_{nu-bar}
    Word mu, nu;
    bool operator<(const PairWord& o) const {
        if (mu.size() + nu.size() != o.mu.size() + o.nu.size())
            return mu.size() + nu.size() < o.mu.size() + o.nu.size();
        if (mu != o.mu) return word_less(mu, o.mu);
        return word_less(nu, o.nu);
    }
    bool operator==(const PairWord& o) const { return mu == o.mu && nu == o.nu; }
};
inline long long basis_depth(const PairWord& p) {
    return static_cast<long long>(p.mu.size() + p.nu.size());
}

struct SignedWord { // basis of l^2(V_A, C^2)
    Word w;
    int sign = +1; // +1 / -1
    bool operator<(const SignedWord& o) const {
        if (w != o.w) return word_less(w, o.w);
        return sign > o.sign; // + before -
    }
    bool operator==(const SignedWord& o) const { return w == o.w && sign == o.sign; }
};
inline long long basis_depth(const SignedWord& s) { return static_cast<long long>(s.w.size()); }

// --- basis -----------------------------------------------------------------

template <class L>
struct Basis {
    std::vector<L> labels;
    std::map<L, int> index;
    long long max_depth = 0;

    static std::shared_ptr<const Basis<L>> make(std::vector<L> labels) {
        auto b = std::make_shared<Basis<L>>();
        b->labels = std::move(labels);
        for (size_t i = 0; i < b->labels.size(); ++i) {
            auto [it, fresh] = b->index.emplace(b->labels[i], static_cast<int>(i));
            if (!fresh) fail("DuplicateLabel", "basis labels must be distinct");
            b->max_depth = std::max(b->max_depth, basis_depth(b->labels[i]));
        }
        return b;
    }
    int find(const L& l) const {
        auto it = index.find(l);
        return it == index.end() ? -1 : it->second;
    }
    size_t size() const { return labels.size(); }
};

template <class L>
using BasisPtr = std::shared_ptr<const Basis<L>>;

// --- sparse operator -------------------------------------------------------

// A finite truncation of an operator between labeled bases. `out_radius`
// bounds how much the operator can raise depth; composite identities are only
// claimed on source labels of depth <= max_depth - (total radius along the
// expression), the "interior".
template <class LI, class LO>
struct SparseOp {
    BasisPtr<LI> src;
    BasisPtr<LO> dst;
    Eigen::SparseMatrix<double> m; // dst.size() x src.size()
    long long out_radius = 0;

    static SparseOp zero(BasisPtr<LI> src, BasisPtr<LO> dst) {
        SparseOp op;
        op.src = std::move(src);
        op.dst = std::move(dst);
        op.m = Eigen::SparseMatrix<double>(static_cast<int>(op.dst->size()),
                                           static_cast<int>(op.src->size()));
        return op;
    }

    static SparseOp from_triplets(BasisPtr<LI> src, BasisPtr<LO> dst,
                                  const std::vector<Eigen::Triplet<double>>& trips) {
        SparseOp op = zero(std::move(src), std::move(dst));
        op.m.setFromTriplets(trips.begin(), trips.end());
        op.m.prune(0.0);
        op.recompute_radius();
        return op;
    }

    void recompute_radius() {
        long long r = 0;
        for (int c = 0; c < m.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
                r = std::max(r, basis_depth(dst->labels[it.row()]) -
                                    basis_depth(src->labels[it.col()]));
        out_radius = r;
    }

    SparseOp<LO, LI> adjoint() const {
        SparseOp<LO, LI> op;
        op.src = dst;
        op.dst = src;
        op.m = m.transpose();
        op.recompute_radius();
        return op;
    }

    SparseOp& operator*=(double s) {
        m *= s;
        return *this;
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return m * x; }
};

template <class L>
SparseOp<L, L> identity_op(BasisPtr<L> b) {
    std::vector<Eigen::Triplet<double>> t;
    for (size_t i = 0; i < b->size(); ++i) t.emplace_back(int(i), int(i), 1.0);
    return SparseOp<L, L>::from_triplets(b, b, t);
}

template <class L>
SparseOp<L, L> diagonal_op(BasisPtr<L> b, const std::function<double(const L&)>& f) {
    std::vector<Eigen::Triplet<double>> t;
    for (size_t i = 0; i < b->size(); ++i) {
        const double v = f(b->labels[i]);
        if (v != 0.0) t.emplace_back(int(i), int(i), v);
    }
    return SparseOp<L, L>::from_triplets(b, b, t);
}

template <class LI, class LM, class LO>
SparseOp<LI, LO> operator*(const SparseOp<LM, LO>& a, const SparseOp<LI, LM>& b) {
    if (a.src != b.dst) fail("BasisMismatch", "composition over different bases");
    SparseOp<LI, LO> op;
    op.src = b.src;
    op.dst = a.dst;
    op.m = a.m * b.m;
    op.m.prune(0.0);
    op.out_radius = a.out_radius + b.out_radius; // conservative
    return op;
}

template <class LI, class LO>
SparseOp<LI, LO> operator+(const SparseOp<LI, LO>& a, const SparseOp<LI, LO>& b) {
    if (a.src != b.src || a.dst != b.dst) fail("BasisMismatch", "sum over different bases");
    SparseOp<LI, LO> op = a;
    op.m = a.m + b.m;
    op.out_radius = std::max(a.out_radius, b.out_radius);
    return op;
}

template <class LI, class LO>
SparseOp<LI, LO> operator-(const SparseOp<LI, LO>& a, const SparseOp<LI, LO>& b) {
    if (a.src != b.src || a.dst != b.dst) fail("BasisMismatch", "difference over different bases");
    SparseOp<LI, LO> op = a;
    op.m = a.m - b.m;
    op.out_radius = std::max(a.out_radius, b.out_radius);
    return op;
}

template <class LI, class LO>
SparseOp<LI, LO> operator*(double s, const SparseOp<LI, LO>& a) {
    SparseOp<LI, LO> op = a;
    op.m *= s;
    return op;
}

// --- interior checks and spectral tools -------------------------------------

// Max |entry| over columns whose source label has depth in [min_depth, max_depth].
template <class LI, class LO>
double max_abs_on_interior(const SparseOp<LI, LO>& op, long long max_src_depth,
                           long long min_src_depth = 0) {
    double worst = 0.0;
    for (int c = 0; c < op.m.outerSize(); ++c) {
        const long long d = basis_depth(op.src->labels[c]);
        if (d < min_src_depth || d > max_src_depth) continue;
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.m, c); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

// The source label of the worst interior column (for counterexample reports).
template <class LI, class LO>
std::pair<double, int> worst_interior_column(const SparseOp<LI, LO>& op, long long max_src_depth,
                                             long long min_src_depth = 0) {
    double worst = 0.0;
    int col = -1;
    for (int c = 0; c < op.m.outerSize(); ++c) {
        const long long d = basis_depth(op.src->labels[c]);
        if (d < min_src_depth || d > max_src_depth) continue;
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.m, c); it; ++it)
            if (std::abs(it.value()) > worst) {
                worst = std::abs(it.value());
                col = c;
            }
    }
    return {worst, col};
}

// Operator norm of op restricted to source labels with depth in range
// (columns outside are zeroed), by power iteration on op^T op.
template <class LI, class LO>
double op_norm_on_interior(const SparseOp<LI, LO>& op, long long max_src_depth,
                           long long min_src_depth = 0, int max_iter = 5000,
                           double tol = 1e-13) {
    Eigen::SparseMatrix<double> r = op.m;
    for (int c = 0; c < r.outerSize(); ++c) {
        const long long d = basis_depth(op.src->labels[c]);
        if (d < min_src_depth || d > max_src_depth)
            for (Eigen::SparseMatrix<double>::InnerIterator it(r, c); it; ++it) it.valueRef() = 0.0;
    }
    r.prune(0.0);
    if (r.nonZeros() == 0) return 0.0;
    Eigen::VectorXd x = Eigen::VectorXd::Ones(r.cols());
    x.normalize();
    double lam = 0.0;
    for (int i = 0; i < max_iter; ++i) {
        Eigen::VectorXd y = r.transpose() * (r * x);
        const double l = y.norm();
        if (l == 0.0) return 0.0;
        y /= l;
        if (std::abs(l - lam) <= tol * std::max(1.0, l) && i > 4) {
            lam = l;
            break;
        }
        lam = l;
        x = y;
    }
    return std::sqrt(lam);
}

inline std::vector<double> singular_values_dense(const Eigen::SparseMatrix<double>& m) {
    Eigen::MatrixXd d(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

template <class LI, class LO>
std::vector<double> singular_values(const SparseOp<LI, LO>& op) {
    return singular_values_dense(op.m);
}

inline constexpr double kKernelRelThreshold = 1e-9;

inline int kernel_dim_from_svals(const std::vector<double>& s, int cols) {
    double top = 0.0;
    for (double x : s) top = std::max(top, x);
    const double thr = top * kKernelRelThreshold; // relative to largest singular value
    int rank = 0;
    for (double x : s)
        if (x > thr) ++rank;
    return cols - rank;
}

template <class LI, class LO>
int kernel_dim(const SparseOp<LI, LO>& op) {
    return kernel_dim_from_svals(singular_values(op), static_cast<int>(op.m.cols()));
}

// Kernel vectors supported on source labels of depth <= max_src_depth: the
// nullity of the submatrix of all rows against the interior columns. On a
// square truncation dim ker T always equals dim ker T^T (rank-nullity), so a
// meaningful finite-truncation index must discard boundary artifacts this way.
template <class LI, class LO>
int kernel_dim_interior(const SparseOp<LI, LO>& op, long long max_src_depth) {
    std::vector<int> keep;
    for (size_t c = 0; c < op.src->size(); ++c)
        if (basis_depth(op.src->labels[c]) <= max_src_depth) keep.push_back(int(c));
    Eigen::MatrixXd d(op.m.rows(), keep.size());
    for (size_t j = 0; j < keep.size(); ++j) d.col(j) = Eigen::VectorXd(op.m.col(keep[j]));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    std::vector<double> s(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
    return kernel_dim_from_svals(s, static_cast<int>(keep.size()));
}

// dim ker T - dim ker T^* over interior-supported kernel vectors.
template <class L>
int fredholm_index_interior(const SparseOp<L, L>& op, long long interior_depth) {
    return kernel_dim_interior(op, interior_depth) -
           kernel_dim_interior(op.adjoint(), interior_depth);
}

// Schatten p-(quasi)norm from singular values; dense, desk scale only.
template <class LI, class LO>
double schatten_norm(const SparseOp<LI, LO>& op, double p) {
    double s = 0.0;
    for (double x : singular_values(op)) s += std::pow(x, p);
    return std::pow(s, 1.0 / p);
}

// Heat trace sum e^{-t d_i^2} over the diagonal of a diagonal operator.
template <class L>
double heat_trace_diagonal(const SparseOp<L, L>& op, double t) {
    Eigen::VectorXd d = op.m.diagonal();
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) s += std::exp(-t * d[i] * d[i]);
    return s;
}

// Coordinate-list CSV export: row_label, col_label, value.
template <class LI, class LO>
void export_csv(const SparseOp<LI, LO>& op, std::ostream& out) {
    out << "row_label,col_label,value\n";
    for (int c = 0; c < op.m.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.m, c); it; ++it)
            out << label_str(op.dst->labels[it.row()]) << "," << label_str(op.src->labels[c])
                << "," << it.value() << "\n";
}

// sign(D) for a diagonal operator, with sign(0) = 0 (kernel convention).
template <class L>
SparseOp<L, L> sign_of_diagonal(const SparseOp<L, L>& op, double zero_tol = 0.0) {
    std::vector<Eigen::Triplet<double>> t;
    Eigen::VectorXd d = op.m.diagonal();
    for (int i = 0; i < d.size(); ++i) {
        if (d[i] > zero_tol)
            t.emplace_back(i, i, 1.0);
        else if (d[i] < -zero_tol)
            t.emplace_back(i, i, -1.0);
    }
    return SparseOp<L, L>::from_triplets(op.src, op.dst, t);
}

} // namespace ck
