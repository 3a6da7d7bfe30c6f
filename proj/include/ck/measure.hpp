#pragma once

#include <vector>

#include "ck/adjacency.hpp"
#include "ck/word_table.hpp"

namespace ck {

struct PerronData {
    double lambda = 1.0;      // spectral radius, e^{delta_A}
    std::vector<double> v;    // right eigenvector, sum = 1, entries >= 0
    double residual = 0.0;    // ||Av - lambda v||_inf
    int iterations = 0;
    bool reducible = false;   // letter digraph not strongly connected
    bool used_dense_fallback = false;
};

PerronData perron(const AdjacencyMatrix& A, double tol = 1e-12, int max_iter = 200000);

// Conformal (Patterson-Sullivan) measure in closed form:
//   vol(C_mu) = lambda^{-(|mu|-1)} v_{mu_last},  vol(C_()) = 1.
class ConformalMeasure {
public:
    ConformalMeasure(AdjacencyMatrix A, PerronData p) : A_(std::move(A)), p_(std::move(p)) {}
    static ConformalMeasure compute(const AdjacencyMatrix& A, double tol = 1e-12) {
        return ConformalMeasure(A, perron(A, tol));
    }

    const AdjacencyMatrix& matrix() const { return A_; }
    const PerronData& perron_data() const { return p_; }
    double delta() const;

    double vol_cylinder(const Word& w) const;

    // max over |mu| <= depth of |int L_sigma chi_{C_mu} dmu - e^delta vol(C_mu)|.
    double conformality_residual(int depth) const;

    // phi_A(S_mu S_nu^*) = delta_{mu,nu} vol(C_mu).
    double kms_monomial(const Word& mu, const Word& nu) const;

    // c_mu = (sum_j A(mu_last, j) vol(C_j))^{-1/2}; depends only on the last
    // letter. c of the empty word is 1 (the unit has norm 1 in the GNS space).
    double c_constant(const Word& mu) const;
    double c_of_last_letter(Letter l) const;

    double modular_function(long long n) const; // e^{-delta_A * n}

private:
    AdjacencyMatrix A_;
    PerronData p_;
};

} // namespace ck
