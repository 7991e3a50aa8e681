#include "nc4/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nc4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// Composite Simpson weights for n equally spaced nodes (n-1 intervals,
// spacing h). Falls back to a 3/8 block at the end when n-1 is odd.
std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(n, 0.0);
    int m = n - 1; // interval count
    int simpson_end = (m % 2 == 0) ? m : m - 3;
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end < m) {
        int s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

// Derivative at x[k] of the Lagrange cubic through (x[s..s+3], y[s..s+3]).
double lagrange_cubic_slope(const std::vector<double>& x,
                            const std::vector<double>& y, int s, int k) {
    double d = 0.0;
    for (int i = s; i < s + 4; ++i) {
        if (i == k) {
            double sum = 0.0;
            for (int j = s; j < s + 4; ++j)
                if (j != k) sum += 1.0 / (x[k] - x[j]);
            d += y[i] * sum;
        } else {
            double num = 1.0, den = 1.0;
            for (int j = s; j < s + 4; ++j) {
                if (j == i) continue;
                den *= x[i] - x[j];
                if (j != k) num *= x[k] - x[j];
            }
            d += y[i] * num / den;
        }
    }
    return d;
}

} // namespace

RadialGrid build_grid(int n, double lambda_cutoff, GridScheme scheme) {
    if (n < 16) throw std::invalid_argument("build_grid: need n >= 16");
    if (!(lambda_cutoff > 0.0))
        throw std::invalid_argument("build_grid: cutoff must be positive");

    RadialGrid g;
    g.lambda_cutoff = lambda_cutoff;
    g.scheme = scheme;
    g.nodes.resize(n);

    if (scheme == GridScheme::uniform) {
        for (int k = 0; k < n; ++k)
            g.nodes[k] = lambda_cutoff * (k + 1) / n;
        double h = lambda_cutoff / n;
        g.weights = simpson_weights(n, h);
        g.weights[0] += g.nodes[0]; // rectangle on [0, node0]
    } else {
        const double lo = lambda_cutoff * 1e-8;
        const double ratio = std::pow(lambda_cutoff / lo, 1.0 / (n - 1));
        for (int k = 0; k < n; ++k)
            g.nodes[k] = lo * std::pow(ratio, k);
        g.nodes[n - 1] = lambda_cutoff;
        // Simpson in u = log p, then dp = p du.
        double h = std::log(ratio);
        g.weights = simpson_weights(n, h);
        for (int k = 0; k < n; ++k) g.weights[k] *= g.nodes[k];
        g.weights[0] += g.nodes[0];
    }
    // Pin sum(w) = Lambda^2 exactly (Simpson reproduces it to ~1e-10
    // relative already).
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    double scale = lambda_cutoff / sum;
    for (double& w : g.weights) w *= scale;
    return g;
}

SampledFunction::SampledFunction(std::shared_ptr<const RadialGrid> grid,
                                 std::vector<double> values,
                                 double value_at_zero, double tail_exponent)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      value_at_zero_(value_at_zero),
      tail_exponent_(tail_exponent) {
    const auto& x = grid_->nodes;
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(values_.size()) != n)
        throw std::invalid_argument("SampledFunction: size mismatch");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SampledFunction: non-finite value");

    // 4th-order slopes, then Fritsch-Carlson monotonicity limiting.
    slopes_.resize(n);
    for (int k = 0; k < n; ++k) {
        int s = std::clamp(k - 1, 0, n - 4);
        slopes_[k] = lagrange_cubic_slope(x, values_, s, k);
    }
    auto secant = [&](int k) {
        return (values_[k + 1] - values_[k]) / (x[k + 1] - x[k]);
    };
    for (int k = 0; k < n; ++k) {
        double dl = (k > 0) ? secant(k - 1) : secant(k);
        double dr = (k < n - 1) ? secant(k) : secant(k - 1);
        if (dl * dr <= 0.0 && k > 0 && k < n - 1) {
            slopes_[k] = 0.0;
            continue;
        }
        double cap = 3.0 * std::min(std::fabs(dl), std::fabs(dr));
        double sgn = (dr >= 0.0) ? 1.0 : -1.0;
        if (slopes_[k] * sgn < 0.0)
            slopes_[k] = 0.0;
        else if (std::fabs(slopes_[k]) > cap)
            slopes_[k] = sgn * cap;
    }
}

SampledFunction SampledFunction::from_function(
    std::shared_ptr<const RadialGrid> grid,
    const std::function<double(double)>& f, double value_at_zero,
    double tail_exponent) {
    std::vector<double> v(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k) v[k] = f(grid->nodes[k]);
    return SampledFunction(std::move(grid), std::move(v), value_at_zero,
                           tail_exponent);
}

double SampledFunction::operator()(double a) const {
    const auto& x = grid_->nodes;
    const int n = static_cast<int>(x.size());
    if (a <= x[0]) {
        if (a <= 0.0) return value_at_zero_;
        double t = a / x[0];
        return value_at_zero_ + t * (values_[0] - value_at_zero_);
    }
    if (a >= x[n - 1]) {
        if (a == x[n - 1]) return values_[n - 1];
        return values_[n - 1] * std::pow(a / x[n - 1], tail_exponent_);
    }
    int k = static_cast<int>(std::upper_bound(x.begin(), x.end(), a) -
                             x.begin()) - 1;
    double h = x[k + 1] - x[k];
    double t = (a - x[k]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * values_[k] + h * h10 * slopes_[k] + h01 * values_[k + 1] +
           h * h11 * slopes_[k + 1];
}

double SampledFunction::derivative(double a) const {
    const auto& x = grid_->nodes;
    const int n = static_cast<int>(x.size());
    if (a <= x[0]) return (values_[0] - value_at_zero_) / x[0];
    if (a >= x[n - 1])
        return tail_exponent_ * values_[n - 1] / x[n - 1] *
               std::pow(a / x[n - 1], tail_exponent_ - 1.0);
    int k = static_cast<int>(std::upper_bound(x.begin(), x.end(), a) -
                             x.begin()) - 1;
    double h = x[k + 1] - x[k];
    double t = (a - x[k]) / h;
    double t2 = t * t;
    double dh00 = 6 * t2 - 6 * t, dh10 = 3 * t2 - 4 * t + 1;
    double dh01 = -6 * t2 + 6 * t, dh11 = 3 * t2 - 2 * t;
    return (dh00 * values_[k] + dh01 * values_[k + 1]) / h + dh10 * slopes_[k] +
           dh11 * slopes_[k + 1];
}

double integrate(const std::function<double(double)>& f, double a_lo,
                 double a_hi, int panels) {
    if (a_hi < a_lo) throw std::invalid_argument("integrate: a_hi < a_lo");
    if (a_hi == a_lo) return 0.0;
    double h = (a_hi - a_lo) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        double c = a_lo + (p + 0.5) * h;
        for (int i = 0; i < 8; ++i)
            sum += kGlWeight[i] * f(c + 0.5 * h * kGlNode[i]);
    }
    return 0.5 * h * sum;
}

double integrate(const SampledFunction& f, double a_lo, double a_hi) {
    const double cutoff = f.grid().lambda_cutoff;
    if (a_lo < 0.0 || a_hi > cutoff || a_hi < a_lo)
        throw std::invalid_argument("integrate: range outside [0, Lambda^2]");
    return integrate([&f](double a) { return f(a); }, a_lo, a_hi, 256);
}

double hilbert(const SampledFunction& f, double a) {
    const RadialGrid& g = f.grid();
    const double cutoff = g.lambda_cutoff;
    if (a < 0.0 || a > cutoff)
        throw std::invalid_argument("hilbert: a outside [0, Lambda^2)");
    if (a == cutoff)
        throw std::invalid_argument("hilbert: endpoint a = Lambda^2");

    const int n = static_cast<int>(g.size());
    if (a == 0.0) {
        if (std::fabs(f.value_at_zero()) > 1e-12)
            throw std::invalid_argument("hilbert: a = 0 requires f(0) = 0");
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += g.weights[k] * f.values()[k] / g.nodes[k];
        return s / kPi;
    }

    const double fa = f(a);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        double dp = g.nodes[k] - a;
        double q = (std::fabs(dp) < 1e-12 * (g.nodes[k] + a))
                       ? f.derivative(a)
                       : (f.values()[k] - fa) / dp;
        s += g.weights[k] * q;
    }
    return (s + fa * std::log((cutoff - a) / a)) / kPi;
}

double hilbert_extended(const SampledFunction& f, double a) {
    const RadialGrid& g = f.grid();
    const double L = g.lambda_cutoff;
    if (a < 0.0 || a > L)
        throw std::invalid_argument("hilbert_extended: a outside [0, Lambda^2]");
    const double se = f.tail_exponent();
    if (!(se < 0.0))
        throw std::invalid_argument("hilbert_extended: needs a decaying tail");

    const int n = static_cast<int>(g.size());
    const double fN = f.values()[n - 1];
    auto tail = [&](double p) { return fN * std::pow(p / L, se); };

    if (a == 0.0) {
        if (std::fabs(f.value_at_zero()) > 1e-12)
            throw std::invalid_argument(
                "hilbert_extended: a = 0 requires f(0) = 0");
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += g.weights[k] * f.values()[k] / g.nodes[k];
        // int_L^inf tail(p)/p dp = -fN/se
        return (s - fN / se) / kPi;
    }

    // Subtraction interval extended to X = 2 Lambda^2 so the PV point
    // never sits at an interval end.
    const double X = 2.0 * L;
    const double fa = f(a);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        double dp = g.nodes[k] - a;
        double q = (std::fabs(dp) < 1e-12 * (g.nodes[k] + a))
                       ? f.derivative(a)
                       : (f.values()[k] - fa) / dp;
        s += g.weights[k] * q;
    }
    s += integrate([&](double p) { return (tail(p) - fa) / (p - a); }, L, X,
                   128);
    s += fa * std::log((X - a) / a);
    // Far tail: int_X^inf tail(p)/(p-a) dp, split as
    //   int tail/p dp  +  a int tail/(p(p-a)) dp,
    // first part analytic, second regular under p = X/u even for a
    // slowly decaying tail.
    const double tX = fN * std::pow(X / L, se);
    s += tX * (-1.0 / se);
    s += a * tX *
         integrate([&](double u) { return std::pow(u, -se) / (X - a * u); },
                   0.0, 1.0, 64);
    return s / kPi;
}

} // namespace nc4
