#pragma once

#include <cstdint>
#include <vector>

#include "ck/adjacency.hpp"
#include "ck/point.hpp"
#include "ck/word_table.hpp"

namespace ck {

// An element (x, n, y) with sigma^{n+k}(x) = sigma^k(y) for some k. Validity
// is checked on construction by a scan up to a provable bound (preperiods +
// lcm of periods + |n|); kappa is the minimal such k.
class GroupoidElement {
public:
    static GroupoidElement make(const AdjacencyMatrix& A, EpPoint x, long long n, EpPoint y);

    const EpPoint& x() const { return x_; }
    const EpPoint& y() const { return y_; }
    long long n() const { return n_; } // the cocycle c_A
    long long kappa() const { return kappa_; }

    GroupoidElement compose(const AdjacencyMatrix& A, const GroupoidElement& other) const;
    GroupoidElement inverse(const AdjacencyMatrix& A) const;
    bool is_unit() const { return n_ == 0 && x_ == y_; }

    bool operator==(const GroupoidElement& o) const {
        return n_ == o.n_ && x_ == o.x_ && y_ == o.y_;
    }

private:
    GroupoidElement(EpPoint x, long long n, EpPoint y, long long kappa)
        : x_(std::move(x)), y_(std::move(y)), n_(n), kappa_(kappa) {}
    EpPoint x_, y_;
    long long n_;
    long long kappa_;
};

// kappa as a standalone scan (also used to canonicalize fiber elements);
// returns -1 when no k within the provable bound exists.
long long kappa_scan(const EpPoint& x, long long n, const EpPoint& y);

// Y_lambda = { (x,n,y) in G^0 : |lambda| <= n and sigma^{n-|lambda|}(x) = lambda.y }.
bool in_Y_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda);

// psi_lambda: n on Y_lambda, -n on G^0 \ Y_lambda, -|n|-kappa off G^0.
long long psi_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda);

// a_lambda = psi_lambda(x,n,y) - psi_lambda(sigma x, n-1, y), computed from
// the definition and, when `check_case_table`, cross-checked against the
// closed case table; a mismatch raises CaseTableMismatch.
long long a_lambda(const AdjacencyMatrix& A, const GroupoidElement& g, const Word& lambda,
                   bool check_case_table = true);
long long a_lambda_case_table(const AdjacencyMatrix& A, const GroupoidElement& g,
                              const Word& lambda);

// A canonical source-fiber basis element over omega: the groupoid element
// (prefix . sigma^cut(omega), |prefix| - cut, omega) with cut minimal.
struct FiberElement {
    Word prefix;
    long long cut = 0;

    long long n() const { return static_cast<long long>(prefix.size()) - cut; }
    long long depth() const { return static_cast<long long>(prefix.size()) + cut; }

    bool operator==(const FiberElement& o) const { return cut == o.cut && prefix == o.prefix; }
    bool operator<(const FiberElement& o) const {
        if (cut != o.cut) return cut < o.cut;
        return word_less(prefix, o.prefix);
    }
};

EpPoint fiber_range_point(const AdjacencyMatrix& A, const FiberElement& f, const EpPoint& omega);
GroupoidElement fiber_to_groupoid(const AdjacencyMatrix& A, const FiberElement& f,
                                  const EpPoint& omega);

// All canonical (prefix, cut) with |prefix| <= max_prefix, cut <= max_cut and
// admissible junction, deduplicated to minimal-cut representatives, in
// (cut, word-order) order.
std::vector<FiberElement> enumerate_fiber(const AdjacencyMatrix& A, const EpPoint& omega,
                                          int max_prefix, int max_cut,
                                          std::uint64_t cap = kDefaultWordCap);

} // namespace ck
