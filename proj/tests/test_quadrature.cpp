#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nc4/quadrature.hpp"

#include <cmath>
#include <memory>
#include <numbers>

using namespace nc4;

namespace {
constexpr double kPi = std::numbers::pi;

std::shared_ptr<const RadialGrid> make(int n, double cutoff, GridScheme s) {
    return std::make_shared<const RadialGrid>(build_grid(n, cutoff, s));
}
} // namespace

TEST_CASE("build_grid uniform nodes") {
    auto g = build_grid(16, 1.0, GridScheme::uniform);
    for (int k = 0; k < 16; ++k)
        CHECK(g.nodes[k] == doctest::Approx((k + 1) / 16.0).epsilon(1e-15));
}

TEST_CASE("build_grid log_uniform geometry") {
    auto g = build_grid(100, 1e4, GridScheme::log_uniform);
    CHECK(g.nodes.front() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(g.nodes.back() == doctest::Approx(1e4).epsilon(1e-15));
    double r = g.nodes[1] / g.nodes[0];
    for (int k = 1; k + 1 < 100; ++k)
        CHECK(g.nodes[k + 1] / g.nodes[k] == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("grid weights positive and sum to cutoff") {
    for (auto scheme : {GridScheme::uniform, GridScheme::log_uniform}) {
        for (int n : {16, 17, 200, 2000}) {
            auto g = build_grid(n, 1e4, scheme);
            double sum = 0.0;
            for (double w : g.weights) {
                CHECK(w > 0.0);
                sum += w;
            }
            CHECK(sum == doctest::Approx(1e4).epsilon(1e-10));
        }
    }
    CHECK_THROWS(build_grid(8, 1.0, GridScheme::uniform));
    CHECK_THROWS(build_grid(32, -1.0, GridScheme::uniform));
}

TEST_CASE("integrate callables") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 7.0) ==
          doctest::Approx(7.0).epsilon(1e-14));
    CHECK(integrate([](double p) { return p; }, 0.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-10));
    double v = integrate([](double p) { return 1.0 / ((1 + p) * (1 + p)); },
                         0.0, 10.0);
    CHECK(v == doctest::Approx(10.0 / 11.0).epsilon(1e-8));
    CHECK_THROWS(integrate([](double) { return 1.0; }, 1.0, 0.0));
}

TEST_CASE("integrate sampled function over full range") {
    auto g = make(300, 10.0, GridScheme::log_uniform);
    auto f = SampledFunction::from_function(g, [](double) { return 1.0; }, 1.0);
    CHECK(integrate(f, 0.0, 10.0) == doctest::Approx(10.0).epsilon(1e-10));
    CHECK_THROWS(integrate(f, 0.0, 11.0));
}

TEST_CASE("interpolation contract") {
    auto g = make(200, 10.0, GridScheme::log_uniform);
    auto f = SampledFunction::from_function(
        g, [](double a) { return 1.0 / (1.0 + a); }, 1.0, -1.0);

    SUBCASE("node values reproduced exactly") {
        for (std::size_t k = 0; k < g->size(); ++k)
            CHECK(f(g->nodes[k]) == f.values()[k]);
    }
    SUBCASE("analytic accuracy off-node") {
        CHECK(f(0.3) == doctest::Approx(1.0 / 1.3).epsilon(1e-6));
        CHECK(f(2.71) == doctest::Approx(1.0 / 3.71).epsilon(1e-6));
    }
    SUBCASE("power-law tail") {
        double v = f(20.0);
        CHECK(v == doctest::Approx(f(10.0) * std::pow(2.0, -1.0)).epsilon(1e-12));
    }
    SUBCASE("monotone data gives monotone interpolant") {
        double prev = f(0.0);
        for (double a = 0.001; a <= 10.0; a += 0.0037) {
            double v = f(a);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("hilbert transform exact cases") {
    auto g = make(2000, 1.0, GridScheme::log_uniform);
    auto one = SampledFunction::from_function(g, [](double) { return 1.0; }, 1.0);

    SUBCASE("constant: exact PV antiderivative") {
        for (double a : {0.1, 0.37, 0.5, 0.9}) {
            double expect = std::log((1.0 - a) / a) / kPi;
            CHECK(hilbert(one, a) == doctest::Approx(expect).epsilon(1e-12));
        }
        CHECK(std::fabs(hilbert(one, 0.5)) < 1e-14); // symmetry of PV kernel
    }
    SUBCASE("linear") {
        auto lin = SampledFunction::from_function(g, [](double p) { return p; },
                                                  0.0);
        double a = 0.25;
        double expect = (1.0 + a * std::log(3.0)) / kPi;
        CHECK(hilbert(lin, a) == doctest::Approx(expect).epsilon(1e-8));
    }
    SUBCASE("endpoint and zero preconditions") {
        CHECK_THROWS(hilbert(one, 1.0));
        CHECK_THROWS(hilbert(one, 0.0)); // f(0) != 0
        auto lin = SampledFunction::from_function(g, [](double p) { return p; },
                                                  0.0);
        CHECK(hilbert(lin, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-7));
    }
}

TEST_CASE("hilbert linearity") {
    auto g = make(500, 1.0, GridScheme::log_uniform);
    auto f = SampledFunction::from_function(
        g, [](double p) { return 1.0 / (1.0 + p); }, 1.0);
    auto h = SampledFunction::from_function(
        g, [](double p) { return 1.0 / (2.0 + p); }, 0.5);
    std::vector<double> comb(g->size());
    const double al = 0.7, be = 2.3;
    for (std::size_t k = 0; k < g->size(); ++k)
        comb[k] = al * f.values()[k] + be * h.values()[k];
    SampledFunction fc(g, comb, al * 1.0 + be * 0.5);
    for (double a : {0.2, 0.55}) {
        double lhs = hilbert(fc, a);
        double rhs = al * hilbert(f, a) + be * hilbert(h, a);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("hilbert_extended against closed forms on [0, inf)") {
    // f(p) = 1/(1+p): PV int_0^inf dp/((1+p)(p-a)) = -ln(a)/(1+a).
    // The power tail (p/L)^{-1} differs from 1/(1+p) by O(1/p^2), so the
    // model error is O(1/L^2).
    auto g = make(2000, 1e4, GridScheme::log_uniform);
    auto f = SampledFunction::from_function(
        g, [](double p) { return 1.0 / (1.0 + p); }, 1.0, -1.0);
    for (double a : {0.5, 2.0, 50.0}) {
        double expect = -std::log(a) / (1.0 + a) / kPi;
        CHECK(hilbert_extended(f, a) ==
              doctest::Approx(expect).epsilon(1e-6));
    }
    SUBCASE("regular at the right endpoint") {
        double L = 1e4;
        double expect = -std::log(L) / (1.0 + L) / kPi;
        CHECK(hilbert_extended(f, L) ==
              doctest::Approx(expect).epsilon(1e-4));
        CHECK_THROWS(hilbert_extended(f, 1.0001e4));
    }
    SUBCASE("a = 0 path") {
        auto h = SampledFunction::from_function(
            g, [](double p) { return p / ((1.0 + p) * (1.0 + p)); }, 0.0,
            -1.0);
        // int_0^inf dp/(1+p)^2 = 1
        CHECK(hilbert_extended(h, 0.0) ==
              doctest::Approx(1.0 / kPi).epsilon(1e-6));
        CHECK_THROWS(hilbert_extended(f, 0.0)); // f(0) != 0
    }
    SUBCASE("rejects non-decaying tail") {
        auto c = SampledFunction::from_function(
            g, [](double) { return 1.0; }, 1.0, 0.0);
        CHECK_THROWS(hilbert_extended(c, 1.0));
    }
}

TEST_CASE("hilbert grid-refinement convergence order >= 2") {
    // H_1[1/(1+p)] on [0, 4]: closed form by symbolic PV integration:
    // (1/pi) * [ ln((L-a)/a)/(1+a) + ln((1+L)/(1+a)... ] computed below.
    const double L = 4.0, a = 1.0;
    // PV int_0^L 1/((1+p)(p-a)) dp = [ln((L-a)/a) - ln(1+L)] / (1+a)
    double exact =
        (std::log((L - a) / a) - std::log(1.0 + L)) / (1.0 + a) / kPi;
    auto err = [&](int n) {
        auto g = make(n, L, GridScheme::log_uniform);
        auto f = SampledFunction::from_function(
            g, [](double p) { return 1.0 / (1.0 + p); }, 1.0);
        return std::fabs(hilbert(f, a) - exact);
    };
    double e1 = err(250), e2 = err(1000);
    double order = std::log(e1 / e2) / std::log(4.0);
    CHECK(order >= 2.0);
}
