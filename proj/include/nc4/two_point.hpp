#pragma once

// General 2-point function built on top of a converged boundary solution:
//   G(a,b) = exp(H_a[theta_b] - H_0[theta_0])
//            / sqrt((lambda pi a)^2 + (b + B_a)^2),
//   theta_b(p) = arctan_{[0,pi]}( lambda pi p / (b + B_p) ),
// together with the D=2/D=4 first-order diagonal references and the
// asymptotic-exponent fit for G(a,a).

#include "nc4/boundary_solver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nc4 {

class TwoPointEvaluator {
public:
    explicit TwoPointEvaluator(BoundarySolution boundary);

    const BoundarySolution& boundary() const { return boundary_; }
    // H_p[g] at the grid nodes (log-divergent at p = 0; value_at_zero
    // holds the first node's value as a placeholder).
    const SampledFunction& hilbert_of_g() const { return hilbert_of_g_; }
    // B_p = (1 + lambda pi p H_p[g]) / g(p); B_0 = 1/g(0).
    const SampledFunction& b_table() const { return b_table_; }

    // theta_b(p) in [0, pi]; theta_b(0) = 0.
    double theta_angle(double b, double p) const;

    double g_ab(double a, double b) const;
    double g_diag(double a) const { return g_ab(a, a); }

private:
    BoundarySolution boundary_;
    SampledFunction hilbert_of_g_;
    SampledFunction b_table_;
    std::optional<SampledFunction> theta0_; // theta_0 on the grid
    double h0_theta0_ = 0.0;                // H_0[theta_0], fixed per solution

    SampledFunction sample_theta(double b) const;
};

// First-order diagonal 2-point function, dimension 2 or 4 (units mu = 1):
//   D=2: 1/(1+2a) + lambda *     2 log(1+a) / (1+2a)^2
//   D=4: 1/(1+2a) - lambda * (2+2a) log(1+a) / (1+2a)^2
double perturbative_diag(double a, double lambda, int dimension);

struct ExponentFit {
    double kappa = 0.0;     // slope of -log G vs log(1 + 2(1+Y)a)
    double r_squared = 0.0; // goodness of the linear fit
};

// Least-squares fit of G(a,a) ~ C (1 + 2(1+Y)a)^{-kappa}. Needs at least
// 8 samples with a_max/a_min >= 100.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples,
                         double wf_param);

} // namespace nc4
