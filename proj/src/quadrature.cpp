#include "ck/quadrature.hpp"

#include <cmath>

#include "ck/errors.hpp"

namespace ck {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    if (depth <= 0) fail("QuadratureFailure", "adaptive recursion exhausted");
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return adapt(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tol, max_depth);
}

double resolvent_power_integral(double d, double r, double quad_tol) {
    if (!(r > 0.0 && r < 1.0)) fail("BadExponent", "need 0 < r < 1");
    const double c = 1.0 + d * d;
    // [0,1]: lambda = u^{1/(1-r)} removes the lambda^{-r} singularity
    const double p = 1.0 / (1.0 - r);
    auto f1 = [&](double u) { return p / (c + std::pow(u, p)); };
    // [1,inf): lambda = 1/t then t = w^{1/r} removes the tail and the
    // resulting t^{r-1} singularity
    const double q = 1.0 / r;
    auto f2 = [&](double w) { return q / (c * std::pow(w, q) + 1.0); };
    const double raw =
        adaptive_simpson(f1, 0.0, 1.0, quad_tol / 4.0) + adaptive_simpson(f2, 0.0, 1.0, quad_tol / 4.0);
    return std::sin(r * M_PI) / M_PI * raw;
}

IntegralFormulaReport integral_formula_check(const std::vector<double>& diag, double r,
                                             double quad_tol) {
    IntegralFormulaReport rep;
    for (double d : diag) {
        const double lhs = resolvent_power_integral(d, r, quad_tol);
        const double rhs = std::pow(1.0 + d * d, -r);
        rep.max_defect = std::max(rep.max_defect, std::abs(lhs - rhs));
    }
    for (double lam : {0.0, 1.0, 10.0})
        for (double d : diag) {
            for (double s : {r, 1.0})
                if (std::pow(1.0 + d * d + lam, -s) > std::pow(1.0 + lam, -s) + 1e-15)
                    rep.estimates_ok = false;
            if (std::abs(d) / std::sqrt(1.0 + d * d + lam) > 1.0 + 1e-15) rep.estimates_ok = false;
            if (d * d / (1.0 + d * d + lam) > 1.0 + 1e-15) rep.estimates_ok = false;
        }
    return rep;
}

} // namespace ck
