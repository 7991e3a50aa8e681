#include "nc4/positivity.hpp"

#include "nc4/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nc4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chebyshev series in the plain-sum convention f = sum_j a_j T_j on
// [lo, hi], fitted at the N+1 Lobatto points.

std::vector<double> lobatto_points(int n_coef) {
    int N = n_coef - 1;
    std::vector<double> t(n_coef);
    for (int k = 0; k <= N; ++k) t[k] = std::cos(kPi * k / N);
    return t;
}

std::vector<double> cheb_fit_values(const std::vector<double>& vals) {
    int N = static_cast<int>(vals.size()) - 1;
    std::vector<double> a(N + 1, 0.0);
    for (int j = 0; j <= N; ++j) {
        double s = 0.5 * vals[0] + 0.5 * ((j % 2 == 0) ? vals[N] : -vals[N]);
        for (int k = 1; k < N; ++k) s += vals[k] * std::cos(kPi * j * k / N);
        a[j] = 2.0 * s / N;
    }
    a[0] *= 0.5;
    a[N] *= 0.5;
    return a;
}

std::vector<double> cheb_diff(const std::vector<double>& a, double lo,
                              double hi) {
    int N = static_cast<int>(a.size()) - 1;
    std::vector<double> b(N + 1, 0.0);
    if (N >= 1) b[N - 1] = 2.0 * N * a[N];
    for (int k = N - 1; k >= 1; --k) b[k - 1] = b[k + 1] + 2.0 * k * a[k];
    b[0] *= 0.5;
    double scale = 2.0 / (hi - lo);
    for (double& v : b) v *= scale;
    return b;
}

double cheb_eval(const std::vector<double>& a, double t) {
    // Clenshaw on [-1, 1]
    double d1 = 0.0, d2 = 0.0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
        double d = 2.0 * t * d1 - d2 + a[k];
        d2 = d1;
        d1 = d;
    }
    return t * d1 - d2 + a[0];
}

double to_unit(double x, double lo, double hi) {
    return (2.0 * x - lo - hi) / (hi - lo);
}

// Derivative in x of h(x), computed in the stretched variable
// u = log(1+x): d/dx = e^{-u} d/du. Returns values at the probe points.
std::vector<double> stretched_derivative(
    const std::function<double(double)>& h, int order, double x_max,
    int degree, const std::vector<double>& probes) {
    const double u_lo = 0.0, u_hi = std::log1p(x_max);
    auto t = lobatto_points(degree + 1);
    std::vector<double> u(degree + 1), vals(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        u[k] = 0.5 * ((u_hi - u_lo) * t[k] + u_hi + u_lo);
        vals[k] = h(std::expm1(u[k]));
    }
    for (int step = 0; step < order; ++step) {
        auto coef = cheb_diff(cheb_fit_values(vals), u_lo, u_hi);
        for (int k = 0; k <= degree; ++k)
            vals[k] = cheb_eval(coef, t[k]) * std::exp(-u[k]);
    }
    auto coef = cheb_fit_values(vals);
    std::vector<double> out(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i)
        out[i] = cheb_eval(coef, to_unit(std::log1p(probes[i]), u_lo, u_hi));
    return out;
}

// Shared engine for the Widder and CM suites. quantity(n) is the
// derivative order used for condition n; target(n) is the function to
// differentiate.
WidderReport run_suite(const std::function<double(double)>& f, int n_max,
                       const std::vector<double>& probes,
                       const std::function<int(int)>& order_of,
                       const std::function<double(int, double)>& target) {
    if (probes.empty())
        throw std::invalid_argument("positivity: no probe points");
    for (double x : probes)
        if (!(x > 0.0))
            throw std::invalid_argument("positivity: probes must be > 0");
    double x_max = *std::max_element(probes.begin(), probes.end());

    WidderReport report;
    report.engine = {120, 0.0, x_max, true};

    double f_min = f(probes[0]), f_absmax = 0.0;
    for (double x : probes) {
        double v = f(x);
        f_min = std::min(f_min, v);
        f_absmax = std::max(f_absmax, std::fabs(v));
    }
    report.s0_min = f_min;
    report.s0_pass = f_min >= -1e-13 * f_absmax;

    for (int n = 0; n <= n_max; ++n) {
        int order = order_of(n);
        auto h = [&, n](double x) { return target(n, x); };
        auto v_hi = stretched_derivative(h, order, x_max, 120, probes);
        auto v_lo = stretched_derivative(h, order, x_max, 90, probes);
        double est_err = 0.0, absmax = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            est_err = std::max(est_err, std::fabs(v_hi[i] - v_lo[i]));
            absmax = std::max(absmax, std::fabs(v_hi[i]));
        }
        double tol = 10.0 * est_err + 1e-13 * absmax;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        double min_signed = sign * v_hi[0];
        bool pass = true;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            double s = sign * v_hi[i];
            min_signed = std::min(min_signed, s);
            if (s < -tol && pass) {
                pass = false;
                if (!report.first_failure)
                    report.first_failure = WidderFailure{n, probes[i], s};
            }
        }
        report.verdicts.push_back({n, pass, min_signed, tol});
    }
    return report;
}

} // namespace

bool WidderReport::all_pass() const {
    if (!s0_pass) return false;
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::function<double(double)> cheb_derivative(
    const std::function<double(double)>& f, double x_lo, double x_hi,
    int degree, int order) {
    if (!(x_hi > x_lo)) throw std::invalid_argument("cheb_derivative: domain");
    if (degree < 2 || order < 0 || order > degree - 2)
        throw std::invalid_argument("cheb_derivative: order too high");
    auto t = lobatto_points(degree + 1);
    std::vector<double> vals(degree + 1);
    for (int k = 0; k <= degree; ++k)
        vals[k] = f(0.5 * ((x_hi - x_lo) * t[k] + x_hi + x_lo));
    auto coef = cheb_fit_values(vals);
    for (int j = 0; j < order; ++j) coef = cheb_diff(coef, x_lo, x_hi);
    return [coef = std::move(coef), x_lo, x_hi](double x) {
        return cheb_eval(coef, to_unit(x, x_lo, x_hi));
    };
}

WidderReport widder_check(const std::function<double(double)>& f, int n_max,
                          const std::vector<double>& probe_points) {
    if (n_max < 0 || n_max > 5)
        throw std::invalid_argument(
            "widder_check: n_max <= 5 (derivative order cap 11)");
    // slot n=0 carries (S1) f >= 0; slots n >= 1 carry the (S2) family
    // (-1)^n d^{2n+1}/dx^{2n+1} (x^{n+1} f)
    return run_suite(
        f, n_max, probe_points,
        [](int n) { return n == 0 ? 0 : 2 * n + 1; },
        [&f](int n, double x) {
            return n == 0 ? f(x) : std::pow(x, n + 1) * f(x);
        });
}

WidderReport cm_check(const std::function<double(double)>& f, int n_max,
                      const std::vector<double>& probe_points) {
    if (n_max < 0 || n_max > 11)
        throw std::invalid_argument("cm_check: n_max <= 11");
    return run_suite(
        f, n_max, probe_points, [](int n) { return n; },
        [&f](int, double x) { return f(x); });
}

double stieltjes_forward(const SpectralMeasure& measure, double x,
                         double kappa) {
    if (x < 0.0 || kappa < 1.0)
        throw std::invalid_argument("stieltjes_forward: need x >= 0, kappa >= 1");
    double s = 0.0;
    for (const auto& atom : measure.atoms) {
        if (atom.location < 0.0 || !(atom.weight > 0.0))
            throw std::invalid_argument("stieltjes_forward: bad atom");
        s += atom.weight * std::pow(x + atom.location, -kappa);
    }
    if (measure.density) {
        const auto& rho = *measure.density;
        s += integrate(
            [&](double m2) { return rho(m2) * std::pow(x + m2, -kappa); },
            0.0, rho.grid().lambda_cutoff, 256);
    }
    return s;
}

OrderLiftResult order_lift_check(double kappa, double kappa_prime, double x,
                                 double t) {
    if (!(kappa > 0.0) || !(kappa_prime > kappa))
        throw std::invalid_argument("order_lift_check: need k' > k > 0");
    if (x < 0.0 || !(t > 0.0))
        throw std::invalid_argument("order_lift_check: need x >= 0, t > 0");
    const double s = kappa_prime - kappa;
    const double c = x + t;
    const double U = 100.0 * c;

    // int_0^U u^{s-1}(c+u)^{-k'} du; for s < 1 the substitution y = u^s
    // absorbs the integrable endpoint singularity exactly
    double main =
        (s < 1.0)
            ? integrate(
                  [&](double y) {
                      return std::pow(c + std::pow(y, 1.0 / s),
                                      -kappa_prime) / s;
                  },
                  0.0, std::pow(U, s), 512)
            : integrate(
                  [&](double u) {
                      return std::pow(u, s - 1.0) *
                             std::pow(c + u, -kappa_prime);
                  },
                  0.0, U, 512);

    // tail by the binomial series of (1 + c/u)^{-k'}, c/U = 0.01
    double tail = 0.0, b = 1.0;
    for (int m = 0; m < 30; ++m) {
        double term = b * std::pow(c, m) *
                      std::pow(U, s - kappa_prime - m) /
                      (kappa_prime - s + m);
        tail += term;
        if (std::fabs(term) < 1e-18 * std::fabs(tail)) break;
        b *= -(kappa_prime + m) / (m + 1.0);
    }

    OrderLiftResult r;
    r.lhs = std::pow(c, -kappa);
    r.rhs = gamma_fn(kappa_prime) / (gamma_fn(kappa) * gamma_fn(s)) *
            (main + tail);
    r.diff = std::fabs(r.lhs - r.rhs);
    return r;
}

std::vector<double> default_probe_points(double x_max) {
    if (!(x_max > 1e-3))
        throw std::invalid_argument("default_probe_points: x_max too small");
    const int n = 600;
    const double u_lo = std::log1p(1e-3), u_hi = std::log1p(x_max);
    std::vector<double> p(n);
    for (int k = 0; k < n; ++k)
        p[k] = std::expm1(u_lo + (u_hi - u_lo) * k / (n - 1));
    return p;
}

} // namespace nc4
