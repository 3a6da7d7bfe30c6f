#include "ck/point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ck/errors.hpp"

namespace ck {

namespace {

size_t primitive_root_length(const Word& w) {
    const size_t n = w.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (size_t i = p; i < n && ok; ++i) ok = (w[i] == w[i - p]);
        if (ok) return p;
    }
    return n;
}

} // namespace

EpPoint EpPoint::make(const AdjacencyMatrix& A, Word preperiod, Word period) {
    if (period.empty()) fail("EmptyPeriod", "eventually periodic point needs a nonempty period");
    if (!A.word_admissible(preperiod))
        fail("InadmissibleWord", "preperiod " + show_word(preperiod));
    if (!A.word_admissible(period)) fail("InadmissibleWord", "period " + show_word(period));
    if (!A.at(period.back(), period.front()))
        fail("InadmissibleWord", "period " + show_word(period) + " does not wrap around");
    if (!preperiod.empty() && !A.at(preperiod.back(), period.front()))
        fail("InadmissibleWord", "junction " + show_word(preperiod) + "|" + show_word(period));
    EpPoint x;
    x.pre_ = std::move(preperiod);
    x.per_ = std::move(period);
    x.canonicalize();
    return x;
}

void EpPoint::canonicalize() {
    per_.resize(primitive_root_length(per_));
    // Absorb preperiod letters that merely replay the period.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        per_.pop_back();
        per_.insert(per_.begin(), pre_.back());
        pre_.pop_back();
    }
}

EpPoint EpPoint::shifted(size_t k) const {
    EpPoint x = *this;
    for (size_t s = 0; s < k; ++s) {
        if (!x.pre_.empty()) {
            x.pre_.erase(x.pre_.begin());
        } else {
            std::rotate(x.per_.begin(), x.per_.begin() + 1, x.per_.end());
        }
    }
    // Shifting never breaks primitivity or preperiod minimality.
    return x;
}

EpPoint EpPoint::with_prefix(const AdjacencyMatrix& A, const Word& w) const {
    Word pre = w;
    pre.insert(pre.end(), pre_.begin(), pre_.end());
    return make(A, std::move(pre), per_);
}

bool EpPoint::starts_with(const Word& w) const {
    for (size_t i = 0; i < w.size(); ++i)
        if (letter(i) != w[i]) return false;
    return true;
}

std::optional<size_t> EpPoint::first_difference(const EpPoint& x, const EpPoint& y) {
    const size_t px = x.pre_.size(), py = y.pre_.size();
    const size_t l = std::lcm(x.per_.size(), y.per_.size());
    const size_t bound = std::max(px, py) + l;
    for (size_t i = 0; i < bound; ++i)
        if (x.letter(i) != y.letter(i)) return i;
    return std::nullopt; // beyond the bound both tails repeat in sync
}

std::string EpPoint::str() const {
    std::string s = pre_.empty() ? "" : show_word(pre_);
    s += "(" + show_word(per_) + ")^inf";
    return s;
}

double metric_distance(const EpPoint& x, const EpPoint& y) {
    auto d = EpPoint::first_difference(x, y);
    if (!d) return 0.0;
    return std::exp(-static_cast<double>(*d + 1)); // 1-based index
}

} // namespace ck
