#include "nc4/schwinger.hpp"

#include "nc4/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nc4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::vector<int>> even_compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int j = 2; j <= rest; j += 2) {
            cur.push_back(j);
            self(self, rest - j);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

double norm4(const Point4& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

// Per-cycle momentum integral for a factorized provider:
//   int d^4p/(4 pi^2) e^{i<p,xi>} f(j, |p|^2/(2(1+Y))) = 4 pi^2 * rf4.
class CycleTransformCache {
public:
    CycleTransformCache(const MatrixFunctionProvider& provider, double wf_param)
        : provider_(provider), scale_(2.0 * (1.0 + wf_param)) {}

    double operator()(int j, double r) {
        auto key = std::make_pair(j, r);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        RadialKernel kernel{
            [this, j](double p) {
                return provider_.cycle_factor(j, p * p / scale_);
            },
            provider_.cycle_decay(j)};
        double v = (r > 0.0) ? radial_fourier4(kernel, r)
                             : radial_fourier4_origin(kernel);
        v *= 4.0 * kPi * kPi;
        cache_.emplace(key, v);
        return v;
    }

private:
    const MatrixFunctionProvider& provider_;
    double scale_;
    std::map<std::pair<int, double>, double> cache_;
};

// Sum of Eq.-level terms over (composition, permutation); the optional
// filter selects terms by the cycle decomposition of the permuted
// positions (used by the cluster limit).
double assemble(const std::vector<Point4>& x,
                const MatrixFunctionProvider& provider, double wf_param,
                const std::function<bool(const std::vector<int>&,
                                         const std::vector<int>&)>* filter) {
    const int n = static_cast<int>(x.size());
    if (n == 0 || n > 6)
        throw std::invalid_argument("npoint: supports 1 <= N <= 6");
    if (n % 2 != 0) return 0.0;
    const double scale = 2.0 * (1.0 + wf_param);

    CycleTransformCache transform(provider, wf_param);
    auto compositions = even_compositions(n);
    std::vector<int> sigma(n);
    double total = 0.0;

    for (const auto& comp : compositions) {
        const int b = static_cast<int>(comp.size());
        if (!provider.factorized() && b > 2)
            throw std::invalid_argument(
                "npoint: non-factorized provider limited to two cycles");
        double prefactor = 1.0;
        for (int j : comp) prefactor *= std::pow(4.0, j) / j;

        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            if (filter && !(*filter)(comp, sigma)) continue;
            // alternating sums xi_beta and their radii
            std::vector<double> radii(b);
            int offset = 0;
            for (int beta = 0; beta < b; ++beta) {
                Point4 xi{0.0, 0.0, 0.0, 0.0};
                for (int i = 0; i < comp[beta]; ++i) {
                    double sgn = (i % 2 == 0) ? 1.0 : -1.0;
                    for (int c = 0; c < 4; ++c)
                        xi[c] += sgn * x[sigma[offset + i]][c];
                }
                radii[beta] = norm4(xi);
                offset += comp[beta];
            }

            double term;
            if (provider.factorized()) {
                term = prefactor;
                for (int beta = 0; beta < b; ++beta)
                    term *= transform(comp[beta], radii[beta]);
            } else if (b == 1) {
                RadialKernel kernel{
                    [&](double p) {
                        return provider.evaluate(comp, {p * p / scale});
                    },
                    provider.cycle_decay(comp[0])};
                double v = (radii[0] > 0.0)
                               ? radial_fourier4(kernel, radii[0])
                               : radial_fourier4_origin(kernel);
                term = prefactor * 4.0 * kPi * kPi * v;
            } else {
                RadialKernel outer{
                    [&](double p) {
                        double ap = p * p / scale;
                        RadialKernel inner{
                            [&](double q) {
                                return provider.evaluate(
                                    comp, {ap, q * q / scale});
                            },
                            provider.cycle_decay(comp[1])};
                        double v = (radii[1] > 0.0)
                                       ? radial_fourier4(inner, radii[1])
                                       : radial_fourier4_origin(inner);
                        return 4.0 * kPi * kPi * v;
                    },
                    provider.cycle_decay(comp[0])};
                double v = (radii[0] > 0.0)
                               ? radial_fourier4(outer, radii[0])
                               : radial_fourier4_origin(outer);
                term = prefactor * 4.0 * kPi * kPi * v;
            }
            total += term;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return total / (64.0 * kPi * kPi);
}

} // namespace

double MatrixFunctionProvider::cycle_factor(int, double) const {
    throw std::logic_error("cycle_factor: provider is not factorized");
}

double FactorizedProvider::evaluate(
    const std::vector<int>& cycle_profile,
    const std::vector<double>& diagonal_args) const {
    if (cycle_profile.size() != diagonal_args.size())
        throw std::invalid_argument("provider: profile/argument mismatch");
    double v = 1.0;
    for (std::size_t k = 0; k < cycle_profile.size(); ++k)
        v *= factor_(cycle_profile[k], diagonal_args[k]);
    return v;
}

std::shared_ptr<MatrixFunctionProvider> free_theory_provider() {
    return std::make_shared<FactorizedProvider>([](int j, double a) {
        return (j == 2) ? 1.0 / (1.0 + 2.0 * a) : 0.0;
    });
}

std::shared_ptr<MatrixFunctionProvider> gaussian_toy_provider(double width) {
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian_toy_provider: width <= 0");
    return std::make_shared<FactorizedProvider>(
        [width](int, double a) { return std::exp(-a / width); },
        [](int) { return 1e3; }); // superpolynomial decay
}

std::shared_ptr<MatrixFunctionProvider> diagonal_provider(
    std::shared_ptr<const TwoPointEvaluator> evaluator) {
    double cutoff = evaluator->boundary().params.lambda_cutoff;
    double lambda = evaluator->boundary().params.lambda;
    double edge = evaluator->g_diag(cutoff);
    return std::make_shared<FactorizedProvider>(
        [evaluator, cutoff, lambda, edge](int j, double a) {
            if (j != 2) return 0.0;
            if (a <= cutoff) return evaluator->g_diag(a);
            // power-law continuation past the solver cutoff
            return edge * std::pow(a / cutoff, -(1.0 + lambda));
        },
        [lambda](int j) { return j == 2 ? 2.0 * (1.0 + lambda) : 1e3; });
}

double radial_fourier4(const RadialKernel& kernel, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("radial_fourier4: r <= 0");
    if (kernel.decay_exponent < 2.0)
        throw std::invalid_argument("radial_fourier4: kernel not integrable");
    auto f = [&](double p) {
        return p * p * bessel_j1(p * r) * kernel.evaluate(p);
    };
    // graded panels inside each oscillation segment: fine near p = 0
    // (down to width 1/32, for kernels with narrow features), relative
    // steps further out, and at least two panels per segment
    auto seg_integral = [&](double lo, double hi) {
        double s = 0.0, a = lo;
        const double cap = 0.5 * (hi - lo);
        while (a < hi) {
            double step = std::min(std::max(1.0 / 32.0, 0.25 * a), cap);
            double b = std::min(hi, a + step);
            s += integrate(f, a, b, 1);
            a = b;
        }
        return s;
    };

    const int direct = 6, max_seg = 400;
    double head = 0.0, tail = 0.0, z_prev = 0.0;
    double est = 0.0, prev_est = 0.0, max_term = 0.0;
    std::vector<double> stack;
    int stable = 0;
    for (int k = 0; k < max_seg; ++k) {
        double z_next = bessel_j1_zero(k + 1) / r;
        double term = seg_integral(z_prev, z_next);
        z_prev = z_next;
        max_term = std::max(max_term, std::fabs(term));
        if (k < direct) {
            head += term;
            continue;
        }
        tail += term;
        stack.push_back(tail);
        for (int i = static_cast<int>(stack.size()) - 2; i >= 0; --i)
            stack[i] = 0.5 * (stack[i] + stack[i + 1]);
        est = head + stack[0];
        double tol = 1e-12 * std::fabs(est) + 1e-15 * max_term;
        if (k > direct + 4 && std::fabs(est - prev_est) <= tol) {
            if (++stable >= 2) return est / (4.0 * kPi * kPi * r);
        } else {
            stable = 0;
        }
        prev_est = est;
    }
    throw std::runtime_error("radial_fourier4: accelerated tail did not converge");
}

double radial_fourier4_origin(const RadialKernel& kernel) {
    if (!(kernel.decay_exponent > 4.0))
        throw std::invalid_argument(
            "radial_fourier4_origin: kernel must decay faster than p^-4");
    auto f = [&](double p) { return p * p * p * kernel.evaluate(p); };
    double total = 0.0, lo = 0.0, hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        double t = integrate(f, lo, hi, 8);
        total += t;
        if (k > 3 && std::fabs(t) <= 1e-14 * std::fabs(total))
            return total / (8.0 * kPi * kPi);
        lo = hi;
        hi *= 2.0;
    }
    throw std::runtime_error("radial_fourier4_origin: no convergence");
}

double schwinger2(const TwoPointEvaluator& evaluator, double r,
                  double wf_param) {
    if (!(r > 0.0)) throw std::invalid_argument("schwinger2: r <= 0");
    const double scale = 2.0 * (1.0 + wf_param);
    const double cutoff = evaluator.boundary().params.lambda_cutoff;
    const double lambda = evaluator.boundary().params.lambda;
    const double edge = evaluator.g_diag(cutoff);
    RadialKernel kernel{
        [&, scale, cutoff, lambda, edge](double p) {
            double a = p * p / scale;
            if (a <= cutoff) return evaluator.g_diag(a);
            return edge * std::pow(a / cutoff, -(1.0 + lambda));
        },
        2.0 * (1.0 + lambda)};
    return radial_fourier4(kernel, r);
}

double closed_form_2pt(double lambda, double r) {
    if (!(lambda > -1.0) || !(r > 0.0))
        throw std::invalid_argument("closed_form_2pt: need lambda > -1, r > 0");
    double nu = std::fabs(1.0 - lambda);
    return std::pow(2.0, -lambda) / (4.0 * kPi * kPi * gamma_fn(1.0 + lambda)) *
           bessel_k(nu, r) / std::pow(r, 1.0 - lambda);
}

double npoint(const std::vector<Point4>& positions,
              const MatrixFunctionProvider& provider, double wf_param) {
    return assemble(positions, provider, wf_param, nullptr);
}

ClusterResult cluster_limit4(const std::array<Point4, 4>& positions,
                             const Point4& shift_dir,
                             const std::vector<double>& taus,
                             const MatrixFunctionProvider& provider,
                             double wf_param) {
    std::vector<Point4> base(positions.begin(), positions.end());
    ClusterResult result;
    for (double tau : taus) {
        auto shifted = base;
        for (int idx : {2, 3})
            for (int c = 0; c < 4; ++c)
                shifted[idx][c] += tau * shift_dir[c];
        result.values.push_back(npoint(shifted, provider, wf_param));
    }

    // terms whose alternating position sums are shift-invariant: the
    // shifted points must enter each cycle with coefficients summing
    // to zero
    std::function<bool(const std::vector<int>&, const std::vector<int>&)>
        invariant = [](const std::vector<int>& comp,
                       const std::vector<int>& sigma) {
            int offset = 0;
            for (int j : comp) {
                int c = 0;
                for (int i = 0; i < j; ++i)
                    if (sigma[offset + i] >= 2)
                        c += (i % 2 == 0) ? 1 : -1;
                if (c != 0) return false;
                offset += j;
            }
            return true;
        };
    result.limit_value = assemble(base, provider, wf_param, &invariant);
    return result;
}

double anomalous_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 8)
        throw std::invalid_argument("anomalous_fit: need >= 8 samples");
    double r_min = samples[0].first, r_max = samples[0].first;
    for (const auto& [r, s] : samples) {
        if (!(r > 0.0) || !(s > 0.0))
            throw std::invalid_argument("anomalous_fit: need r, S > 0");
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
    }
    if (r_max < 10.0 * r_min)
        throw std::invalid_argument("anomalous_fit: degenerate sample span");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& [r, s] : samples) {
        double xv = std::log(r), yv = -std::log(s);
        sx += xv; sy += yv; sxx += xv * xv; sxy += xv * yv;
    }
    return (sxy - sx * sy / n) / (sxx - sx * sx / n);
}

namespace {

// Tabulated provider: versioned text blocks, one per cycle profile.
class TabulatedProvider : public MatrixFunctionProvider {
public:
    explicit TabulatedProvider(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("tabulated_provider: cannot open " +
                                        path);
        std::string line;
        if (!std::getline(in, line) ||
            line != "# matrix-function-table v1")
            throw std::invalid_argument(
                "tabulated_provider: bad or missing version header");
        Block* block = nullptr;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line.rfind("# cycle_profile=", 0) == 0) {
                Block b;
                std::stringstream ss(line.substr(16));
                std::string tok;
                while (std::getline(ss, tok, ','))
                    b.profile.push_back(std::stoi(tok));
                if (b.profile.empty() || b.profile.size() > 2)
                    throw std::invalid_argument(
                        "tabulated_provider: supports 1 or 2 cycles");
                blocks_.push_back(std::move(b));
                block = &blocks_.back();
                continue;
            }
            if (line[0] == '#') continue;
            if (!block)
                throw std::invalid_argument(
                    "tabulated_provider: data before cycle_profile header");
            std::stringstream ss(line);
            std::string tok;
            std::vector<double> row;
            while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
            if (row.size() != block->profile.size() + 1)
                throw std::invalid_argument(
                    "tabulated_provider: wrong column count");
            block->rows.push_back(std::move(row));
        }
        for (auto& b : blocks_) b.index();
    }

    double evaluate(const std::vector<int>& cycle_profile,
                    const std::vector<double>& diagonal_args) const override {
        for (const auto& b : blocks_)
            if (b.profile == cycle_profile) return b.interpolate(diagonal_args);
        return 0.0;
    }

private:
    struct Block {
        std::vector<int> profile;
        std::vector<std::vector<double>> rows;
        std::vector<double> ax0, ax1;       // sorted unique coordinates
        std::vector<double> grid;           // row-major values on ax0 x ax1

        void index() {
            if (rows.empty())
                throw std::invalid_argument(
                    "tabulated_provider: empty profile block");
            for (const auto& r : rows) ax0.push_back(r[0]);
            std::sort(ax0.begin(), ax0.end());
            ax0.erase(std::unique(ax0.begin(), ax0.end()), ax0.end());
            if (profile.size() == 1) {
                grid.assign(ax0.size(), 0.0);
                for (const auto& r : rows) grid[find(ax0, r[0])] = r[1];
                return;
            }
            for (const auto& r : rows) ax1.push_back(r[1]);
            std::sort(ax1.begin(), ax1.end());
            ax1.erase(std::unique(ax1.begin(), ax1.end()), ax1.end());
            if (rows.size() != ax0.size() * ax1.size())
                throw std::invalid_argument(
                    "tabulated_provider: 2-cycle block must be a full grid");
            grid.assign(rows.size(), 0.0);
            for (const auto& r : rows)
                grid[find(ax0, r[0]) * ax1.size() + find(ax1, r[1])] = r[2];
        }

        static std::size_t find(const std::vector<double>& ax, double v) {
            return static_cast<std::size_t>(
                std::lower_bound(ax.begin(), ax.end(), v) - ax.begin());
        }

        // piecewise-linear; zero beyond the tabulated range
        static bool locate(const std::vector<double>& ax, double v,
                           std::size_t& k, double& t) {
            if (ax.size() < 2 || v < ax.front() || v > ax.back()) return false;
            k = static_cast<std::size_t>(
                    std::upper_bound(ax.begin(), ax.end(), v) - ax.begin());
            if (k == ax.size()) --k;
            if (k == 0) ++k;
            --k;
            t = (v - ax[k]) / (ax[k + 1] - ax[k]);
            return true;
        }

        double interpolate(const std::vector<double>& args) const {
            std::size_t i = 0, j = 0;
            double s = 0.0, t = 0.0;
            if (!locate(ax0, args[0], i, s)) return 0.0;
            if (profile.size() == 1)
                return (1.0 - s) * grid[i] + s * grid[i + 1];
            if (!locate(ax1, args[1], j, t)) return 0.0;
            std::size_t w = ax1.size();
            return (1.0 - s) * ((1.0 - t) * grid[i * w + j] +
                                t * grid[i * w + j + 1]) +
                   s * ((1.0 - t) * grid[(i + 1) * w + j] +
                        t * grid[(i + 1) * w + j + 1]);
        }
    };

    std::vector<Block> blocks_;
};

} // namespace

std::shared_ptr<MatrixFunctionProvider> tabulated_provider(
    const std::string& path) {
    return std::make_shared<TabulatedProvider>(path);
}

} // namespace nc4
