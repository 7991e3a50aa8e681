#include "nc4/matrix_basis.hpp"

#include "nc4/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace nc4 {

namespace {

using cplx = std::complex<double>;

void validate_cycle(std::size_t n_z, std::size_t n_t) {
    if (n_z == 0 || n_z != n_t)
        throw std::invalid_argument("cycle sum: need J >= 1, |z| = |t|");
}

void check_weights(const std::vector<cplx>& z) {
    for (const auto& zi : z)
        if (!(std::abs(zi) < 1.0))
            throw std::invalid_argument("cycle sum: requires |z_i| < 1");
}

void check_budget(int m_max, std::size_t J) {
    if (m_max < 0) throw std::invalid_argument("cycle sum: m_max < 0");
    double cost = std::pow(m_max + 1.0, static_cast<double>(J));
    if (cost > 1e7)
        throw std::invalid_argument("cycle sum: truncation budget exceeded");
}

// odometer over {0..m_max}^J
bool advance(std::vector<int>& m, int m_max) {
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (++m[k] <= m_max) return true;
        m[k] = 0;
    }
    return false;
}

cplx direct_f_mn(int m, int n, const Point2& y, double theta) {
    double r2 = y[0] * y[0] + y[1] * y[1];
    double ratio = std::exp(0.5 * (log_gamma(m + 1.0) - log_gamma(n + 1.0)));
    cplx yc(y[0], y[1]);
    cplx arg = 1.0;
    if (n != m) {
        if (r2 == 0.0) return 0.0; // zero of order n-m at the origin
        arg = std::pow(std::sqrt(2.0 / theta) * yc,
                       static_cast<double>(n - m));
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign * ratio * arg * laguerre(m, n - m, 2.0 * r2 / theta) *
           std::exp(-r2 / theta);
}

} // namespace

std::complex<double> f_mn(int m, int n, const Point2& y, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("f_mn: theta <= 0");
    if (m < 0 || n < 0 || m > 400 || n > 400)
        throw std::invalid_argument("f_mn: indices outside [0, 400]");
    // n >= m keeps |y|^{n-m} regular at the origin; the other ordering
    // follows from hermiticity
    if (n >= m) return direct_f_mn(m, n, y, theta);
    return std::conj(direct_f_mn(n, m, y, theta));
}

std::complex<double> lemma_sum(const CycleSpec& spec) {
    validate_cycle(spec.z.size(), spec.t.size());
    check_weights(spec.z);
    const int J = static_cast<int>(spec.z.size());
    cplx prod_all = 1.0;
    for (const auto& zi : spec.z) prod_all *= zi;
    // sum_{i,j} t_i z_{j+i} ... z_{J+i}, indices cyclic mod J
    cplx e = 0.0;
    for (int i = 0; i < J; ++i) {
        cplx suffix = 1.0; // z_{j+i} .. z_{J+i} built from j = J down
        cplx row = 0.0;
        for (int j = J; j >= 1; --j) {
            suffix *= spec.z[(j + i) % J]; // 1-based z_{j+(i+1)} -> 0-based
            row += suffix;
        }
        e += spec.t[i] * row;
    }
    return std::exp(-e / (1.0 - prod_all)) / (1.0 - prod_all);
}

std::complex<double> lemma_sum_truncated(const CycleSpec& spec, int m_max) {
    validate_cycle(spec.z.size(), spec.t.size());
    check_weights(spec.z);
    const std::size_t J = spec.z.size();
    check_budget(m_max, J);
    std::vector<int> m(J, 0);
    cplx total = 0.0;
    do {
        cplx term = 1.0;
        for (std::size_t i = 0; i < J; ++i) {
            int mi = m[i], mn = m[(i + 1) % J];
            term *= std::pow(spec.z[i], mi) * laguerre(mi, mn - mi, spec.t[i]);
        }
        total += term;
    } while (advance(m, m_max));
    return total;
}

std::complex<double> corollary_sum(const std::vector<Point2>& points,
                                   const std::vector<std::complex<double>>& z,
                                   double theta) {
    validate_cycle(z.size(), points.size());
    check_weights(z);
    if (!(theta > 0.0)) throw std::invalid_argument("corollary_sum: theta <= 0");
    const int J = static_cast<int>(z.size());

    cplx prod_neg = 1.0;
    for (const auto& zi : z) prod_neg *= -zi;
    const cplx den = 1.0 - prod_neg;

    double norm2 = 0.0;
    for (const auto& x : points) norm2 += x[0] * x[0] + x[1] * x[1];

    // product of (-z_j) for j in the cyclic range (a, b], 1-based
    auto range_prod = [&](int a, int b) {
        cplx p = 1.0;
        for (int j = a + 1; j <= b; ++j) p *= -z[(j - 1) % J];
        return p;
    };

    cplx cross = 0.0;
    for (int k = 1; k <= J; ++k)
        for (int l = k + 1; l <= J; ++l) {
            const auto& xk = points[k - 1];
            const auto& xl = points[l - 1];
            double dot = xk[0] * xl[0] + xk[1] * xl[1];
            double wedge = xk[0] * xl[1] - xk[1] * xl[0];
            cross += cplx(dot, -wedge) * range_prod(k, l) / den +
                     cplx(dot, wedge) * range_prod(l, J + k) / den;
        }

    return std::pow(2.0, J) / den *
           std::exp(-(norm2 / theta) * (1.0 + prod_neg) / den) *
           std::exp(-(2.0 / theta) * cross);
}

std::complex<double> corollary_sum_truncated(
    const std::vector<Point2>& points,
    const std::vector<std::complex<double>>& z, double theta, int m_max) {
    validate_cycle(z.size(), points.size());
    check_weights(z);
    const std::size_t J = z.size();
    check_budget(m_max, J);
    std::vector<int> m(J, 0);
    cplx total = 0.0;
    do {
        cplx term = 1.0;
        for (std::size_t i = 0; i < J; ++i)
            term *= f_mn(m[i], m[(i + 1) % J], points[i], theta) *
                    std::pow(z[i], m[i]);
        total += term;
    } while (advance(m, m_max));
    return total;
}

GaussianLimitResult gaussian_limit_check(int j,
                                         const std::vector<Point4>& positions,
                                         double t,
                                         const std::vector<double>& volumes) {
    if (j < 1 || static_cast<int>(positions.size()) != j)
        throw std::invalid_argument("gaussian_limit_check: need j positions");
    if (!(t > 0.0)) throw std::invalid_argument("gaussian_limit_check: t <= 0");

    GaussianLimitResult res;
    if (j % 2 == 0) {
        Point4 alt{0, 0, 0, 0};
        for (int i = 0; i < j; ++i) {
            double sgn = (i % 2 == 0) ? 1.0 : -1.0;
            for (int c = 0; c < 4; ++c) alt[c] += sgn * positions[i][c];
        }
        double alt2 = alt[0] * alt[0] + alt[1] * alt[1] + alt[2] * alt[2] +
                      alt[3] * alt[3];
        res.limit_value = std::pow(4.0, j) / (j * j * j * t * t) *
                          std::exp(-alt2 / (2.0 * j * t));
    }

    std::vector<Point2> x01(j), x23(j);
    for (int i = 0; i < j; ++i) {
        x01[i] = {positions[i][0], positions[i][1]};
        x23[i] = {positions[i][2], positions[i][3]};
    }
    for (double v : volumes) {
        if (!(v > 0.0))
            throw std::invalid_argument("gaussian_limit_check: V <= 0");
        double theta = 4.0 * std::sqrt(v);
        std::vector<cplx> z(j, std::exp(-t / std::sqrt(v)));
        double finite = (corollary_sum(x01, z, theta) *
                         corollary_sum(x23, z, theta))
                            .real() /
                        (v * j);
        res.finite_values.push_back(finite);
        double d = std::fabs(finite - res.limit_value);
        if (res.limit_value != 0.0) d /= std::fabs(res.limit_value);
        res.deviations.push_back(d);
    }
    return res;
}

} // namespace nc4
