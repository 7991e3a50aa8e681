#pragma once

// Numerical probes of the Stieltjes property of a candidate 2-point
// function: Widder's derivative conditions (S1)/(S2), complete
// monotonicity, forward Stieltjes transforms of spectral measures, and
// the order-lift identity for generalized Stieltjes kernels.
//
// All verdicts are finite-order: "pass" means no violation detected up
// to the requested derivative order, never a proof.

#include "nc4/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nc4 {

struct SpectralMeasure {
    struct Atom {
        double location; // M^2 >= 0
        double weight;   // > 0
    };
    std::vector<Atom> atoms;
    std::optional<SampledFunction> density; // nonnegative on [0, M^2_max]
};

// Order-k derivative of the degree-d Chebyshev fit of f on [x_lo, x_hi].
std::function<double(double)> cheb_derivative(
    const std::function<double(double)>& f, double x_lo, double x_hi,
    int degree, int order);

struct DerivativeEngineInfo {
    int degree = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    bool log_stretched = false; // fitted in u = log(1+x)
};

struct WidderFailure {
    int n;        // condition index
    double x;     // probe location
    double value; // signed value that went below -tol
};

struct WidderReport {
    struct Verdict {
        int n;
        bool pass;
        double min_signed; // min over probes of the signed quantity
        double tol;        // certified sign tolerance at this order
    };
    bool s0_pass = false;  // min f >= -tol (condition S1)
    double s0_min = 0.0;
    std::vector<Verdict> verdicts; // n = 0..n_max (condition S2 / CM order)
    std::optional<WidderFailure> first_failure;
    DerivativeEngineInfo engine;

    bool all_pass() const;
};

// Widder conditions: f >= 0 (slot n=0 of the report) and, for
// n = 1..n_max,
//   (-1)^n d^{2n+1}/dx^{2n+1} ( x^{n+1} f(x) ) >= 0 at the probe points.
// n_max <= 5 (derivative order <= 11, engine-limited). The sign
// tolerance is estimated per order from a two-degree fit comparison, so
// a "fail" means provably negative at the engine's accuracy.
WidderReport widder_check(const std::function<double(double)>& f, int n_max,
                          const std::vector<double>& probe_points);

// Complete monotonicity: (-1)^n f^(n)(x) >= 0 for n = 0..n_max (<= 11).
WidderReport cm_check(const std::function<double(double)>& f, int n_max,
                      const std::vector<double>& probe_points);

// sum_atoms w/(x+M^2)^kappa + int density(M^2)/(x+M^2)^kappa dM^2.
double stieltjes_forward(const SpectralMeasure& measure, double x,
                         double kappa = 1.0);

struct OrderLiftResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
};

// Order-lift identity: (x+t)^{-kappa} equals
//   Gamma(k')/(Gamma(k) Gamma(k'-k)) int_0^inf du u^{k'-k-1} (x+t+u)^{-k'}
// evaluated by quadrature with an analytic series tail.
OrderLiftResult order_lift_check(double kappa, double kappa_prime, double x,
                                 double t);

// Log-stretched probe grid on [1e-3, x_max], dense enough to localize
// sign changes to better than 0.05 near x = 1.
std::vector<double> default_probe_points(double x_max = 50.0);

} // namespace nc4
