#pragma once

// Self-contained special-function kernel: associated Laguerre polynomials
// (including negative integer upper index), modified Bessel K_nu, ordinary
// Bessel J0/J1, the Gamma function, and the [0,pi]-branch arctangent.
//
// All functions are pure and deterministic; no global state.

#include <stdexcept>

namespace nc4 {

struct Accuracy {
    double rel_tol = 1e-12;
    int max_terms = 400;
};

// Associated Laguerre polynomial L_m^alpha(t) via the finite series.
// Binomial coefficients are evaluated as falling-factorial products, so
// negative integer alpha is handled exactly (no Gamma of a nonpositive
// integer appears).
double laguerre(int m, int alpha, double t);

// Modified Bessel function K_nu(z), nu real, z > 0.
// Series branch (Temme) for z < 2, continued fraction (Steed) for z >= 2.
// Throws std::overflow_error if the result is not representable.
double bessel_k(double nu, double z, const Accuracy& acc = {});

// Bessel functions of the first kind on x >= 0.
// Power series below x = 15, Hankel asymptotic expansion above.
double bessel_j0(double x);
double bessel_j1(double x);

// k-th positive zero of J1 (k = 1, 2, ...).
double bessel_j1_zero(int k);

// The unique theta in [0,pi] with tan(theta) = num/den; pi/2 at den = 0.
// Continuous as den crosses 0 from above to below at fixed num > 0.
// Throws std::domain_error for num < 0.
double arctan_upper(double num, double den);

// Gamma function, Lanczos approximation with reflection for x < 0.5.
// Throws std::domain_error at nonpositive integers.
double gamma_fn(double x);

// log Gamma for x > 0.
double log_gamma(double x);

} // namespace nc4
