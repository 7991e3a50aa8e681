#include "nc4/two_point.hpp"

#include "nc4/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace nc4 {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

TwoPointEvaluator::TwoPointEvaluator(BoundarySolution boundary)
    : boundary_(std::move(boundary)),
      hilbert_of_g_(boundary_.g.grid_ptr(),
                    std::vector<double>(boundary_.g.grid().size(), 0.0), 0.0),
      b_table_(boundary_.g.grid_ptr(),
               std::vector<double>(boundary_.g.grid().size(), 1.0), 1.0) {
    const auto& g = boundary_.g;
    const RadialGrid& grid = g.grid();
    const int n = static_cast<int>(grid.size());
    const double lambda = boundary_.params.lambda;
    if (lambda < 0.0) throw NegativeCoupling();

    std::vector<double> h(n), b(n);
    for (int k = 0; k < n; ++k) {
        double p = grid.nodes[k];
        h[k] = hilbert_extended(g, p);
        b[k] = (1.0 + lambda * kPi * p * h[k]) / g.values()[k];
        if (!std::isfinite(b[k]))
            throw std::runtime_error("TwoPointEvaluator: non-finite B_p");
    }
    // H_p[g] ~ -const/p for large p; B_p grows like p^{1+lambda}.
    const double h_first = h[0];
    hilbert_of_g_ = SampledFunction(g.grid_ptr(), std::move(h), h_first, -1.0);
    b_table_ = SampledFunction(g.grid_ptr(), std::move(b),
                               1.0 / g.value_at_zero(), 1.0 + lambda);

    if (lambda > 0.0) {
        theta0_.emplace(sample_theta(0.0));
        h0_theta0_ = hilbert_extended(*theta0_, 0.0);
    }
}

SampledFunction TwoPointEvaluator::sample_theta(double b) const {
    const RadialGrid& grid = boundary_.g.grid();
    const double lambda = boundary_.params.lambda;
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        v[k] = arctan_upper(lambda * kPi * grid.nodes[k],
                            b + b_table_.values()[k]);
    // theta_b ~ lambda pi p / B_p ~ p^{-lambda} for large p
    return SampledFunction(boundary_.g.grid_ptr(), std::move(v), 0.0, -lambda);
}

double TwoPointEvaluator::theta_angle(double b, double p) const {
    const double lambda = boundary_.params.lambda;
    if (b < 0.0 || p < 0.0 || p > boundary_.g.grid().lambda_cutoff)
        throw std::invalid_argument("theta_angle: arguments out of range");
    if (lambda == 0.0 || p == 0.0) return 0.0;
    return arctan_upper(lambda * kPi * p, b + b_table_(p));
}

double TwoPointEvaluator::g_ab(double a, double b) const {
    const double cutoff = boundary_.g.grid().lambda_cutoff;
    if (a < 0.0 || b < 0.0 || a > cutoff)
        throw std::invalid_argument("g_ab: arguments out of range");
    const double lambda = boundary_.params.lambda;

    double ba = (a == 0.0) ? b_table_.value_at_zero() : b_table_(a);
    double den = std::hypot(lambda * kPi * a, b + ba);

    double exponent = 0.0;
    if (lambda > 0.0) {
        exponent = hilbert_extended(*theta0_, a) - h0_theta0_;
        if (b > 0.0) {
            // theta_b - theta_0 decays like p^{-1-2*lambda}, much faster
            // than theta itself; transforming the difference keeps the
            // b-dependence out of the slowly decaying tail
            auto theta_b = sample_theta(b);
            std::vector<double> d(theta_b.values().size());
            for (std::size_t k = 0; k < d.size(); ++k)
                d[k] = theta_b.values()[k] - theta0_->values()[k];
            SampledFunction delta(boundary_.g.grid_ptr(), std::move(d), 0.0,
                                  -(1.0 + 2.0 * lambda));
            exponent += hilbert_extended(delta, a);
        }
    }
    double value = std::exp(exponent) / den;
    if (!std::isfinite(value))
        throw std::runtime_error("g_ab: non-finite value");
    return value;
}

double perturbative_diag(double a, double lambda, int dimension) {
    if (a < 0.0) throw std::invalid_argument("perturbative_diag: a < 0");
    double d = 1.0 + 2.0 * a;
    double base = 1.0 / d;
    double l1 = std::log1p(a) / (d * d);
    switch (dimension) {
        case 2: return base + lambda * 2.0 * l1;
        case 4: return base - lambda * (2.0 + 2.0 * a) * l1;
        default:
            throw std::invalid_argument("perturbative_diag: dimension");
    }
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples,
                         double wf_param) {
    if (samples.size() < 8)
        throw std::invalid_argument("fit_exponent: need >= 8 samples");
    double a_min = samples[0].first, a_max = samples[0].first;
    for (const auto& [a, gv] : samples) {
        if (!(a > 0.0) || !(gv > 0.0))
            throw std::invalid_argument("fit_exponent: need a, G > 0");
        a_min = std::min(a_min, a);
        a_max = std::max(a_max, a);
    }
    if (a_max < 100.0 * a_min)
        throw std::invalid_argument("fit_exponent: degenerate sample span");

    // regression of y = -log G against x = log(1 + 2(1+Y)a)
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& [a, gv] : samples) {
        double x = std::log1p(2.0 * (1.0 + wf_param) * a);
        double y = -std::log(gv);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    if (!(vxx > 0.0))
        throw std::invalid_argument("fit_exponent: degenerate sample span");
    ExponentFit fit;
    fit.kappa = vxy / vxx;
    fit.r_squared = (vyy > 0.0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return fit;
}

} // namespace nc4
