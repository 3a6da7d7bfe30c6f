#pragma once

#include <functional>
#include <vector>

namespace ck {

// Adaptive Simpson on [a, b]; throws QuadratureFailure when the recursion
// exhausts max_depth before reaching tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

// (sin(r pi)/pi) int_0^inf lambda^{-r} (1 + d^2 + lambda)^{-1} d lambda for a
// diagonal entry d, with the endpoint singularity and the tail removed by the
// substitutions lambda = u^{1/(1-r)} on [0,1] and lambda = w^{-1/r} beyond.
double resolvent_power_integral(double d, double r, double quad_tol);

struct IntegralFormulaReport {
    double max_defect = 0.0; // vs (1 + d^2)^{-r} entrywise
    bool estimates_ok = true; // the three Lemma-estimates at sampled lambda
};
IntegralFormulaReport integral_formula_check(const std::vector<double>& diag, double r,
                                             double quad_tol);

} // namespace ck
