#pragma once

// 2D oscillator basis functions built on associated Laguerre
// polynomials, closed forms for their cyclic index sums, and the
// finite-volume cycle factor with its large-volume Gaussian limit.

#include <array>
#include <complex>
#include <vector>

namespace nc4 {

using Point2 = std::array<double, 2>;

// Cyclic Laguerre sum data: J weights z_i (|z_i| < 1) and J
// nonnegative arguments t_i, indices identified mod J.
struct CycleSpec {
    std::vector<std::complex<double>> z;
    std::vector<double> t;
};

// Basis function on the plane,
//   f_mn(y) = 2 (-1)^m sqrt(m!/n!) (sqrt(2/theta) |y| e^{i eta})^{n-m}
//             L_m^{n-m}(2|y|^2/theta) e^{-|y|^2/theta},
// with the factorial ratio in log space. Hermitian: f_mn = conj(f_nm).
// Indices are capped at 400.
std::complex<double> f_mn(int m, int n, const Point2& y, double theta);

// sum_{m_1..m_J >= 0} prod_i z_i^{m_i} L_{m_i}^{m_{i+1}-m_i}(t_i) in
// closed form:
//   1/(1 - z_1..z_J) exp(- sum_{i,j} t_i (z_{j+i}..z_{J+i}) / (1 - z_1..z_J)).
std::complex<double> lemma_sum(const CycleSpec& spec);

// The same sum truncated at m_i <= m_max; (m_max+1)^J is capped at 1e7.
std::complex<double> lemma_sum_truncated(const CycleSpec& spec, int m_max);

// sum_{m_1..m_J} prod_i f_{m_i m_{i+1}}(x_i) z_i^{m_i} in closed form
// (cyclic cross terms <x_k,x_l> -+ i x_k x x_l over 1 - prod(-z_i)).
std::complex<double> corollary_sum(const std::vector<Point2>& points,
                                   const std::vector<std::complex<double>>& z,
                                   double theta);

std::complex<double> corollary_sum_truncated(
    const std::vector<Point2>& points,
    const std::vector<std::complex<double>>& z, double theta, int m_max);

using Point4 = std::array<double, 4>;

struct GaussianLimitResult {
    double limit_value = 0.0;           // 0 for odd cycle length
    std::vector<double> finite_values;  // one per volume
    std::vector<double> deviations;     // relative (absolute if limit = 0)
};

// Finite-volume cycle factor (1/(V j)) C01 C23 with theta = 4 sqrt(V)
// and z_i = exp(-t/sqrt(V)), where C01/C23 are the closed-form index
// sums over the two coordinate pairs, against its large-volume limit
//   (4^j/(j^3 t^2)) exp(-|sum_i (-1)^{i-1} x_i|^2 / (2 j t))
// for even j (0 for odd j).
GaussianLimitResult gaussian_limit_check(int j,
                                         const std::vector<Point4>& positions,
                                         double t,
                                         const std::vector<double>& volumes);

} // namespace nc4
