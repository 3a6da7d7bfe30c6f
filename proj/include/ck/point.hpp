#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ck/adjacency.hpp"

namespace ck {

// An eventually periodic boundary point: preperiod . period period period ...
// Canonical form invariants, enforced on construction:
//   * the period is primitive (not a proper power of a shorter word),
//   * the preperiod is minimal: its last letter differs from the period's
//     last letter (rotating the period absorbs the preperiod otherwise).
// Canonical forms are unique per point, so equality is field equality.
class EpPoint {
public:
    // Validates admissibility (inside pre, junction, inside per, wrap-around)
    // and canonicalizes.
    static EpPoint make(const AdjacencyMatrix& A, Word preperiod, Word period);
    // Purely periodic point w^inf.
    static EpPoint periodic(const AdjacencyMatrix& A, Word period) {
        return make(A, {}, std::move(period));
    }

    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }

    Letter letter(size_t i) const { // 0-based position
        if (i < pre_.size()) return pre_[i];
        return per_[(i - pre_.size()) % per_.size()];
    }

    EpPoint shifted(size_t k = 1) const;               // sigma^k
    EpPoint with_prefix(const AdjacencyMatrix& A, const Word& w) const; // w . x

    bool starts_with(const Word& w) const; // x in C_w
    // 0-based index of the first differing letter, or nullopt when equal.
    static std::optional<size_t> first_difference(const EpPoint& x, const EpPoint& y);

    bool operator==(const EpPoint& o) const { return pre_ == o.pre_ && per_ == o.per_; }
    bool operator!=(const EpPoint& o) const { return !(*this == o); }
    bool operator<(const EpPoint& o) const {
        if (pre_ != o.pre_) return word_less(pre_, o.pre_);
        return word_less(per_, o.per_);
    }

    std::string str() const; // "12(21)^inf" style, 1-based

private:
    EpPoint() = default;
    void canonicalize();
    Word pre_, per_;
};

// e^{-min{n : x_n != y_n}} with 1-based n; 0 when x == y.
double metric_distance(const EpPoint& x, const EpPoint& y);

} // namespace ck
