#include "nc4/special_functions.hpp"

#include <cmath>
#include <limits>

namespace nc4 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_positive(double x) {
    // x >= 0.5
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Odd-part coefficients of 1/Gamma(1+x): a1 + a3 x^2 + a5 x^4 + ...
// (from the Maclaurin series of the reciprocal Gamma function).
constexpr double kRecipGammaOdd[5] = {
    0.5772156649015329,   -0.0420026350340952, -0.0096219715278770,
    -0.0011651675918591,  0.0001280502823882};

// gam1(mu) = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), smooth at mu = 0.
double temme_gam1(double mu) {
    if (std::fabs(mu) < 0.1) {
        double m2 = mu * mu;
        double s = 0.0;
        for (int i = 4; i >= 0; --i) s = s * m2 + kRecipGammaOdd[i];
        return -s;
    }
    return (1.0 / gamma_fn(1.0 - mu) - 1.0 / gamma_fn(1.0 + mu)) / (2.0 * mu);
}

double temme_gam2(double mu) {
    return 0.5 * (1.0 / gamma_fn(1.0 - mu) + 1.0 / gamma_fn(1.0 + mu));
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 0.5, x <= 2 (Temme's series).
void bessel_k_temme(double mu, double x, double& kmu, double& kmu1,
                    const Accuracy& acc) {
    const double x2 = 0.5 * x;
    const double mu2 = mu * mu;
    const double d = -std::log(x2);
    const double e = mu * d;
    const double pimu = kPi * mu;
    const double fact = (std::fabs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
    const double fact2 = (std::fabs(e) < kEps) ? 1.0 : std::sinh(e) / e;
    double ff = fact * (temme_gam1(mu) * std::cosh(e) + temme_gam2(mu) * fact2 * d);
    double sum = ff;
    double ee = std::exp(e);
    double p = 0.5 * ee * gamma_fn(1.0 + mu);
    double q = 0.5 / ee * gamma_fn(1.0 - mu);
    double c = 1.0;
    double dd = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= acc.max_terms; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= dd / i;
        p /= (i - mu);
        q /= (i + mu);
        double del = c * ff;
        sum += del;
        double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::fabs(del) < std::fabs(sum) * acc.rel_tol) break;
    }
    kmu = sum;
    kmu1 = sum1 * 2.0 / x;
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 0.5, x >= 2 (Steed's continued
// fraction for the confluent hypergeometric ratio).
void bessel_k_cf2(double mu, double x, double& kmu, double& kmu1,
                  const Accuracy& acc) {
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= acc.max_terms; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < acc.rel_tol) break;
    }
    h = a1 * h;
    kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

} // namespace

double laguerre(int m, int alpha, double t) {
    if (m < 0) throw std::domain_error("laguerre: m must be nonnegative");
    // L_m^a(t) = sum_{k=0}^m (-1)^k / k! * C(m+a, m-k) * t^k, with the
    // binomial C(m+a, m-k) = prod_{i=1}^{m-k} (a+k+i)/i.
    double sum = 0.0;
    for (int k = 0; k <= m; ++k) {
        double binom = 1.0;
        for (int i = 1; i <= m - k; ++i)
            binom *= static_cast<double>(alpha + k + i) / i;
        double term = binom;
        for (int i = 1; i <= k; ++i) term *= -t / i;
        sum += term;
    }
    return sum;
}

double bessel_k(double nu, double z, const Accuracy& acc) {
    if (!(z > 0.0)) throw std::domain_error("bessel_k: z must be positive");
    nu = std::fabs(nu); // K_{-nu} = K_nu
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl; // |mu| <= 0.5
    double kmu, kmu1;
    if (z < 2.0)
        bessel_k_temme(mu, z, kmu, kmu1, acc);
    else
        bessel_k_cf2(mu, z, kmu, kmu1, acc);
    // Upward recurrence K_{v+1} = K_{v-1} + (2v/z) K_v.
    for (int l = 1; l <= nl; ++l) {
        double knew = kmu + 2.0 * (mu + l) / z * kmu1;
        kmu = kmu1;
        kmu1 = knew;
        if (!std::isfinite(kmu))
            throw std::overflow_error("bessel_k: overflow in recurrence");
    }
    if (!std::isfinite(kmu)) throw std::overflow_error("bessel_k: overflow");
    return kmu;
}

namespace {

// Power series for J_nu, nu in {0, 1}, safe up to x ~ 15.
double bessel_j_series(int nu, double x) {
    const double q = 0.25 * x * x;
    double term = (nu == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k <= 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1e-300)) break;
    }
    return sum;
}

// Hankel asymptotic expansion for J_nu, large x.
double bessel_j_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= num / (k * 8.0 * x);
        if (std::fabs(term) > prev) break; // divergent tail
        prev = std::fabs(term);
        int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (std::fabs(term) < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j0(double x) {
    if (x < 0.0) throw std::domain_error("bessel_j0: x must be nonnegative");
    return (x < 15.0) ? bessel_j_series(0, x) : bessel_j_asymptotic(0, x);
}

double bessel_j1(double x) {
    if (x < 0.0) throw std::domain_error("bessel_j1: x must be nonnegative");
    return (x < 15.0) ? bessel_j_series(1, x) : bessel_j_asymptotic(1, x);
}

double bessel_j1_zero(int k) {
    if (k < 1) throw std::domain_error("bessel_j1_zero: k must be >= 1");
    // McMahon expansion as the starting point, then Newton.
    const double b = (k + 0.25) * kPi;
    double x = b - 3.0 / (8.0 * b);
    for (int it = 0; it < 30; ++it) {
        double f = bessel_j1(x);
        double fp = bessel_j0(x) - f / x; // J1' = J0 - J1/x
        double dx = f / fp;
        x -= dx;
        if (std::fabs(dx) < 1e-14 * x) break;
    }
    return x;
}

double arctan_upper(double num, double den) {
    if (num < 0.0)
        throw std::domain_error("arctan_upper: numerator must be nonnegative");
    if (num == 0.0 && den == 0.0) return 0.0;
    return std::atan2(num, den);
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
    if (x < 0.5) return std::log(gamma_fn(x));
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

} // namespace nc4
