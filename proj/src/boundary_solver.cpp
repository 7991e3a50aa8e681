#include "nc4/boundary_solver.hpp"

#include <algorithm>
#include <cmath>

namespace nc4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

// atan((a+B)/c) - atan(B/c) for c = lambda pi p > 0, robust for B of
// either sign: equals atan2(c*a, c^2 + B(a+B)), which lies in (0, pi).
double arctan_difference(double a, double B, double c) {
    return std::atan2(c * a, c * c + B * (a + B));
}

} // namespace

double perturbative_boundary(double a, double lambda) {
    return std::pow(1.0 + a, -(1.0 + lambda));
}

SampledFunction fixed_point_map(const SampledFunction& g,
                                const ModelParams& params) {
    const RadialGrid& grid = g.grid();
    const int n = static_cast<int>(grid.size());
    const double lambda = params.lambda;

    // B_p table on the grid.
    std::vector<double> b(n);
    for (int k = 0; k < n; ++k) {
        double gp = g.values()[k];
        if (!(gp > 0.0) || !std::isfinite(gp))
            throw std::runtime_error("fixed_point_map: iterate touched zero");
        double p = grid.nodes[k];
        // tail-aware transform: regular at p = Lambda^2 and closer to the
        // infinite-volume kernel than the bare finite transform
        b[k] = (1.0 + lambda * kPi * p * hilbert_extended(g, p)) / gp;
        if (!std::isfinite(b[k]))
            throw std::runtime_error("fixed_point_map: non-finite B_p");
    }
    const double b0 = 1.0 / g.value_at_zero();

    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        const double a = grid.nodes[j];
        double integral = 0.0;
        for (int k = 0; k < n; ++k) {
            double c = lambda * kPi * grid.nodes[k];
            double phi;
            if (c < 1e-9) {
                // removable p -> 0 limit (and the lambda = 0 case)
                double B = (c == 0.0 && grid.nodes[k] == 0.0) ? b0 : b[k];
                phi = a / (B * (a + B));
            } else {
                phi = arctan_difference(a, b[k], c) / c;
            }
            integral += grid.weights[k] * phi;
        }
        out[j] = std::exp(-lambda * integral) / (1.0 + a);
    }
    return SampledFunction(g.grid_ptr(), std::move(out), 1.0,
                           g.tail_exponent());
}

BoundarySolution solve(const ModelParams& params, const SolverConfig& config,
                       std::vector<double>* residual_history) {
    if (params.lambda < 0.0) throw NegativeCoupling();
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw std::invalid_argument("solve: damping must be in (0, 1]");
    if (!(config.tol > 0.0)) throw std::invalid_argument("solve: tol <= 0");

    auto grid = std::make_shared<const RadialGrid>(
        build_grid(config.grid_n, params.lambda_cutoff, config.scheme));
    const double tail = -(1.0 + params.lambda);
    auto g = SampledFunction::from_function(
        grid, [](double a) { return 1.0 / (1.0 + a); }, 1.0, tail);

    if (params.lambda == 0.0) {
        // exact free-theory path: g0 is the fixed point
        if (residual_history) residual_history->push_back(0.0);
        return BoundarySolution{std::move(g), 0.0, 1, params};
    }

    const int n = static_cast<int>(grid->size());
    double alpha = config.damping;
    double prev_residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= config.max_iter; ++it) {
        SampledFunction tg = fixed_point_map(g, params);
        double residual = 0.0;
        for (int k = 0; k < n; ++k)
            residual = std::max(residual,
                                std::fabs(tg.values()[k] - g.values()[k]));
        if (residual_history) residual_history->push_back(residual);
        if (residual <= config.tol) {
            // enforce the solution invariants
            double prev = 1.0;
            for (int k = 0; k < n; ++k) {
                double v = tg.values()[k];
                if (!(v > 0.0 && v <= 1.0) || v > prev + config.tol)
                    throw std::runtime_error(
                        "solve: solution violates positivity/monotonicity");
                prev = v;
            }
            return BoundarySolution{std::move(tg), residual, it, params};
        }
        if (residual > prev_residual) alpha = std::max(0.5 * alpha, 1.0 / 64);
        prev_residual = residual;
        std::vector<double> next(n);
        for (int k = 0; k < n; ++k)
            next[k] = (1.0 - alpha) * g.values()[k] + alpha * tg.values()[k];
        g = SampledFunction(grid, std::move(next), 1.0, tail);
    }
    throw NonConvergence(config.max_iter, prev_residual);
}

} // namespace nc4
