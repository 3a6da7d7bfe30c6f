#pragma once

#include <map>
#include <string>

#include "ck/adjacency.hpp"
#include "ck/point.hpp"
#include "ck/word_table.hpp"

namespace ck {

// A finitely described map V_A -> Omega_A satisfying the cylinder condition
// t(mu) in C_mu: a named greedy rule plus finitely many overrides. The greedy
// continuation appends the smallest (resp. largest) admissible letter forever;
// the resulting tail is eventually periodic, so values are exact EpPoints.
class ChoiceFunction {
public:
    enum class Rule { GreedyMin, GreedyMax };

    ChoiceFunction(AdjacencyMatrix A, Rule rule) : A_(std::move(A)), rule_(rule) {}

    EpPoint value(const Word& mu) const;
    void set_override(const Word& mu, const EpPoint& p); // must stay in C_mu

    const AdjacencyMatrix& matrix() const { return A_; }
    Rule rule() const { return rule_; }
    const std::map<Word, EpPoint, decltype(&word_less)>& overrides() const { return overrides_; }
    std::string rule_name() const {
        return rule_ == Rule::GreedyMin ? "greedy-min" : "greedy-max";
    }

private:
    EpPoint greedy_from(const Word& mu) const;
    AdjacencyMatrix A_;
    Rule rule_;
    std::map<Word, EpPoint, decltype(&word_less)> overrides_{&word_less};
};

struct ChoicePair {
    ChoiceFunction plus;
    ChoiceFunction minus;
    double comparison_constant = 1.0;
};

// tau_+ = greedy-min, tau_- = greedy-max; cylinder condition by construction.
ChoicePair make_default_pair(const AdjacencyMatrix& A);

// Checks t(mu) in C_mu for all |mu| <= depth; throws CylinderViolation.
void check_cylinder_condition(const ChoiceFunction& f, int depth);
// Checks d(tau+(mu), tau-(mu)) <= C e^{-|mu|} up to depth.
double comparability_constant(const ChoicePair& pair, int depth);

// The exact index pairing < [chi_{C_mu}], [BP_s(tau)] > by the counting
// formula: sum over |nu| < |mu| of chi_{C_mu}(tau+(nu)) - chi_{C_mu}(tau-(nu)).
// Independent of any truncation depth >= |mu|.
long long index_pairing(const ChoicePair& pair, const Word& mu);

// The choice pair of the constructive lemma: reduces mu to its longest
// minimal prefix, then redefines a greedy base pair on the proper prefixes so
// that the pairing with chi_{C_mu} is exactly 1.
ChoicePair construct_tau_for(const AdjacencyMatrix& A, const Word& mu);

} // namespace ck
