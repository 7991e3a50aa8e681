#pragma once

// Position-space Schwinger functions: 4D radial Fourier transform with
// oscillatory-integral acceleration, the Schwinger 2-point function, its
// modified-Bessel closed form, the general N-point assembler over even
// cycle compositions, the 4-point cluster-limit demonstration, and the
// small-r anomalous exponent fit.

#include "nc4/two_point.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nc4 {

using Point4 = std::array<double, 4>;

struct RadialKernel {
    std::function<double(double)> evaluate; // p = |momentum| >= 0
    double decay_exponent = 0.0;            // |F(p)| ~ p^{-decay_exponent}
};

// G(a,...,a | ... | a,...,a): diagonal matrix correlation per boundary
// component; cycle_profile lists the (even) cycle lengths j_beta and
// diagonal_args the per-cycle argument a_beta.
class MatrixFunctionProvider {
public:
    virtual ~MatrixFunctionProvider() = default;
    virtual double evaluate(const std::vector<int>& cycle_profile,
                            const std::vector<double>& diagonal_args) const = 0;
    // When the correlation factorizes over cycles the assembler can
    // decouple the per-cycle momentum integrals.
    virtual bool factorized() const { return false; }
    virtual double cycle_factor(int cycle_length, double a) const;
    // Momentum decay exponent of p -> value at a = p^2/(2(1+Y)) in one
    // cycle argument; gates the coinciding-point (xi = 0) path.
    virtual double cycle_decay(int cycle_length) const {
        return cycle_length >= 4 ? 4.5 : 2.0;
    }
};

// Product over cycles of a user factor f(j, a).
class FactorizedProvider : public MatrixFunctionProvider {
public:
    explicit FactorizedProvider(std::function<double(int, double)> factor,
                                std::function<double(int)> decay = nullptr)
        : factor_(std::move(factor)), decay_(std::move(decay)) {}
    double evaluate(const std::vector<int>& cycle_profile,
                    const std::vector<double>& diagonal_args) const override;
    bool factorized() const override { return true; }
    double cycle_factor(int cycle_length, double a) const override {
        return factor_(cycle_length, a);
    }
    double cycle_decay(int cycle_length) const override {
        return decay_ ? decay_(cycle_length)
                      : MatrixFunctionProvider::cycle_decay(cycle_length);
    }

private:
    std::function<double(int, double)> factor_;
    std::function<double(int)> decay_;
};

// Free theory: only 2-cycles contribute, with G(a,a) = 1/(1+2a).
std::shared_ptr<MatrixFunctionProvider> free_theory_provider();

// Gaussian toy with per-cycle factor exp(-a/width) on every even cycle;
// integrable at coinciding points and convenient for the cluster demo.
std::shared_ptr<MatrixFunctionProvider> gaussian_toy_provider(
    double width = 0.02);

// Factorized provider wrapping the diagonal of a solved 2-point
// function: 2-cycles get G(a,a), longer cycles 0.
std::shared_ptr<MatrixFunctionProvider> diagonal_provider(
    std::shared_ptr<const TwoPointEvaluator> evaluator);

// Tabulated provider loaded from a versioned text file; see README for
// the format. Supports 1- and 2-cycle-profile blocks with linear
// interpolation; arguments beyond the table decay to 0.
std::shared_ptr<MatrixFunctionProvider> tabulated_provider(
    const std::string& path);

// int d^4p/(2pi)^4 e^{i<p,xi>} F(|p|) = (1/(4 pi^2 r)) int_0^inf dp
// p^2 J_1(pr) F(p), partitioned at J_1 zeros with averaging
// acceleration of the alternating partial sums. Needs
// decay_exponent >= 2.
double radial_fourier4(const RadialKernel& kernel, double r);

// xi = 0 limit: (1/(8 pi^2)) int_0^inf dp p^3 F(p); needs
// decay_exponent > 4.
double radial_fourier4_origin(const RadialKernel& kernel);

// Schwinger 2-point function at separation r: radial transform of
// p -> G(a,a) with a = p^2 / (2(1+Y)).
double schwinger2(const TwoPointEvaluator& evaluator, double r,
                  double wf_param);

// Conjectured closed form 2^{-lambda}/(4 pi^2 Gamma(1+lambda)) *
// K_{1-lambda}(r) / r^{1-lambda}. At lambda=0 this is the free
// propagator K_1(r)/(4 pi^2 r). Note: its small-r constant is
// 2^{-2 lambda} Gamma(1-lambda)/(4 pi^2 Gamma(1+lambda)); a 4 pi
// variant of that constant circulates but does not follow from the
// K_nu small-argument law applied to this expression.
double closed_form_2pt(double lambda, double r);

// Connected N-point Schwinger function: (1/(64 pi^2)) sum over ordered
// compositions of N into even cycles and permutations of the positions,
// each cycle contributing (4^j/j) int d^4p/(4 pi^2) with phase
// <p, sum_i (-1)^{i-1} x_sigma(...)> and the provider's diagonal value
// at a = p^2/(2(1+Y)). N <= 6; odd N returns exactly 0. Non-factorized
// providers are supported for at most two cycles.
double npoint(const std::vector<Point4>& positions,
              const MatrixFunctionProvider& provider, double wf_param);

struct ClusterResult {
    std::vector<double> values; // S_4 at each shift parameter tau
    double limit_value = 0.0;   // sum of the shift-invariant terms
};

// S_4(x1, x2, x3 + tau s, x4 + tau s) along taus, against the tau->inf
// limit: the terms of the cycle expansion whose phase arguments are
// invariant under the shift (all others vanish by Riemann-Lebesgue).
ClusterResult cluster_limit4(const std::array<Point4, 4>& positions,
                             const Point4& shift_dir,
                             const std::vector<double>& taus,
                             const MatrixFunctionProvider& provider,
                             double wf_param);

// Least-squares slope of -log S vs log r over small-r samples; equals
// 2-2*lambda for the closed form. Needs >= 8 samples spanning a decade.
double anomalous_fit(const std::vector<std::pair<double, double>>& samples);

} // namespace nc4
