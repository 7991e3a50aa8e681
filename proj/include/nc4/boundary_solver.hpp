#pragma once

// Damped Picard iteration for the nonlinear singular integral equation
// defining the boundary two-point function G(a,0).
//
// The map, after exact inner integration, is
//   T[g](a) = 1/(1+a) * exp(-lambda * int_0^{L^2} dp Phi_p(a)),
//   Phi_p(a) = (1/(lambda pi p)) *
//              [arctan((a+B_p)/(lambda pi p)) - arctan(B_p/(lambda pi p))],
//   B_p     = (1 + lambda pi p H_p[g]) / g(p),
// with the removable limit Phi_0(a) = a / (B_0 (a + B_0)), B_0 = 1/g(0).

#include "nc4/quadrature.hpp"

#include <stdexcept>

namespace nc4 {

struct ModelParams {
    double lambda = 0.0;        // coupling
    double lambda_cutoff = 1e4; // Lambda^2, units mu^2 = 1
    double wf_param = 0.0;      // Y
};

struct SolverConfig {
    double damping = 0.5;  // in (0, 1]
    double tol = 1e-9;     // sup-norm residual target
    int max_iter = 2000;
    int grid_n = 2000;
    GridScheme scheme = GridScheme::log_uniform;
};

struct BoundarySolution {
    SampledFunction g;  // G(a,0) on the grid, value_at_zero = 1
    double residual = 0.0;
    int iterations = 0;
    ModelParams params;
};

struct NonConvergence : std::runtime_error {
    double last_residual;
    NonConvergence(int iters, double res)
        : std::runtime_error("boundary solver: no convergence after " +
                             std::to_string(iters) +
                             " iterations, residual " + std::to_string(res)),
          last_residual(res) {}
};

struct NegativeCoupling : std::invalid_argument {
    NegativeCoupling()
        : std::invalid_argument("boundary solver: requires lambda >= 0") {}
};

// One application of the fixed-point map T on the grid of g.
SampledFunction fixed_point_map(const SampledFunction& g,
                                const ModelParams& params);

// Solve g = T[g] by damped Picard iteration from g0 = 1/(1+a).
// Throws NegativeCoupling for lambda < 0, NonConvergence on failure.
// residual_history, when given, receives the sup-norm residual of every
// iteration (including the accepted one).
BoundarySolution solve(const ModelParams& params, const SolverConfig& config = {},
                       std::vector<double>* residual_history = nullptr);

// First-order perturbative boundary function (1+a)^{-(1+lambda)}.
double perturbative_boundary(double a, double lambda);

} // namespace nc4
