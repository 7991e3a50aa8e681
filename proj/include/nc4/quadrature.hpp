#pragma once

// Radial grids on [0, Lambda^2], weighted integration, monotone cubic
// interpolation with power-law tail extrapolation, and the principal-value
// finite Hilbert transform.
//
// Grids and sampled functions are immutable after construction.

#include <functional>
#include <memory>
#include <vector>

namespace nc4 {

enum class GridScheme { log_uniform, uniform };

struct RadialGrid {
    std::vector<double> nodes;   // strictly increasing, in (0, Lambda^2]
    std::vector<double> weights; // positive, sum = Lambda^2
    double lambda_cutoff = 0.0;  // Lambda^2
    GridScheme scheme = GridScheme::log_uniform;

    std::size_t size() const { return nodes.size(); }
};

// n >= 16 nodes on (0, Lambda^2]. log_uniform places nodes geometrically
// from Lambda^2 * 1e-8 to Lambda^2; uniform places them at k*Lambda^2/n.
// Weights are 4th-order composite (Simpson in the log variable for
// log_uniform grids), rescaled so that they sum to Lambda^2 exactly.
RadialGrid build_grid(int n, double lambda_cutoff,
                      GridScheme scheme = GridScheme::log_uniform);

// A real function sampled on a RadialGrid. Inside [node0, Lambda^2] the
// interpolant is a monotonicity-limited cubic Hermite with 4th-order
// slopes; on [0, node0] it blends linearly to value_at_zero; beyond
// Lambda^2 it follows the power law f(Lambda^2) * (a/Lambda^2)^tail_exponent.
class SampledFunction {
public:
    SampledFunction(std::shared_ptr<const RadialGrid> grid,
                    std::vector<double> values, double value_at_zero,
                    double tail_exponent = 0.0);

    static SampledFunction from_function(std::shared_ptr<const RadialGrid> grid,
                                         const std::function<double(double)>& f,
                                         double value_at_zero,
                                         double tail_exponent = 0.0);

    const RadialGrid& grid() const { return *grid_; }
    std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value_at_zero() const { return value_at_zero_; }
    double tail_exponent() const { return tail_exponent_; }

    double operator()(double a) const;   // interpolate
    double derivative(double a) const;   // interpolant slope

private:
    std::shared_ptr<const RadialGrid> grid_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    double value_at_zero_;
    double tail_exponent_;
};

// Composite Gauss-Legendre integration of a callable over [a_lo, a_hi].
double integrate(const std::function<double(double)>& f, double a_lo,
                 double a_hi, int panels = 64);

// Integral of the interpolant of f over [a_lo, a_hi] within [0, Lambda^2].
double integrate(const SampledFunction& f, double a_lo, double a_hi);

// Principal-value finite Hilbert transform
//   (1/pi) PV int_0^{Lambda^2} f(p)/(p - a) dp
// by singularity subtraction:
//   (1/pi) [ int_0^{Lambda^2} (f(p) - f(a))/(p - a) dp
//            + f(a) * log((Lambda^2 - a)/a) ].
// At a = 0 the precondition f(0) = 0 must hold (integrand f(p)/p).
double hilbert(const SampledFunction& f, double a);

// Tail-aware PV transform over [0, inf): the samples on [0, Lambda^2]
// are continued by the power-law tail of f. Regular for a in
// [0, Lambda^2] (including the right endpoint). Requires a decaying
// tail, tail_exponent < 0.
double hilbert_extended(const SampledFunction& f, double a);

} // namespace nc4
