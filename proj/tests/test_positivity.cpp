#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nc4/positivity.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace nc4;

TEST_CASE("cheb_derivative") {
    SUBCASE("second derivative of x^2 is 2") {
        auto d2 = cheb_derivative([](double x) { return x * x; }, 0.0, 10.0,
                                  30, 2);
        for (double x : {0.1, 1.0, 7.5})
            CHECK(d2(x) == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("third derivative of 1/(1+x)") {
        auto d3 = cheb_derivative([](double x) { return 1.0 / (1.0 + x); },
                                  0.0, 10.0, 60, 3);
        double expect = -6.0 / std::pow(2.0, 4); // -6/(1+x)^4 at x=1
        CHECK(d3(1.0) == doctest::Approx(expect).epsilon(1e-6));
    }
    SUBCASE("order zero reproduces the function") {
        auto id = cheb_derivative([](double x) { return std::exp(-x); }, 0.0,
                                  5.0, 40, 0);
        for (double x : {0.0, 0.5, 2.0, 5.0})
            CHECK(id(x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        auto f = [](double x) { return x; };
        CHECK_THROWS(cheb_derivative(f, 0.0, 10.0, 10, 9)); // order > d-2
        CHECK_THROWS(cheb_derivative(f, 1.0, 1.0, 10, 1));  // empty domain
    }
}

TEST_CASE("widder_check on exact Stieltjes and non-Stieltjes inputs") {
    auto probes = default_probe_points(50.0);

    SUBCASE("1/(1+x) passes all n <= 4") {
        auto r = widder_check([](double x) { return 1.0 / (1.0 + x); }, 4,
                              probes);
        CHECK(r.all_pass());
        CHECK(r.verdicts.size() == 5);
        CHECK(!r.first_failure.has_value());
    }
    SUBCASE("free diagonal 1/(1+2x) passes") {
        auto r = widder_check([](double x) { return 1.0 / (1.0 + 2.0 * x); },
                              4, probes);
        CHECK(r.all_pass());
    }
    SUBCASE("1/(1+x)^2 fails at n=1 just past x=1") {
        auto f = [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); };
        auto r = widder_check(f, 4, probes);
        CHECK(!r.all_pass());
        CHECK(r.verdicts[0].pass);
        CHECK(!r.verdicts[1].pass);
        REQUIRE(r.first_failure.has_value());
        CHECK(r.first_failure->n == 1);
        CHECK(r.first_failure->x > 1.0 - 0.05);
        CHECK(r.first_failure->x < 1.0 + 0.05);
        // engine value against the symbolic derivative
        // -d^3/dx^3 (x^2/(1+x)^2) = -12(x-1)/(1+x)^5
        double x = r.first_failure->x;
        double oracle = -12.0 * (x - 1.0) / std::pow(1.0 + x, 5);
        CHECK(r.first_failure->value ==
              doctest::Approx(oracle).epsilon(1e-4));
    }
    SUBCASE("rejects n_max beyond the engine cap") {
        CHECK_THROWS(widder_check([](double x) { return 1.0 / (1.0 + x); }, 6,
                                  probes));
    }
}

TEST_CASE("cm_check") {
    auto probes = default_probe_points(50.0);

    SUBCASE("e^{-x} is completely monotone") {
        auto r = cm_check([](double x) { return std::exp(-x); }, 8, probes);
        CHECK(r.all_pass());
    }
    SUBCASE("1/(1+x)^2 is CM though not order-1 Stieltjes") {
        auto r = cm_check(
            [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, 6,
            probes);
        CHECK(r.all_pass());
    }
    SUBCASE("sin(x)+2 fails with an O(1) violation") {
        auto r = cm_check([](double x) { return std::sin(x) + 2.0; }, 4,
                          probes);
        CHECK(!r.all_pass());
        CHECK(r.verdicts[0].pass); // sin(x)+2 > 0
        CHECK(!r.verdicts[2].pass);
        // signed quantity at n=2 is f'' = -sin(x), minimum -1
        CHECK(r.verdicts[2].min_signed ==
              doctest::Approx(-1.0).epsilon(1e-4));
    }
}

TEST_CASE("stieltjes_forward") {
    SUBCASE("single atom") {
        SpectralMeasure m{{{1.0, 1.0}}, std::nullopt};
        CHECK(stieltjes_forward(m, 0.0, 1.0) == doctest::Approx(1.0));
        for (double x : {0.3, 2.0, 11.0})
            CHECK(stieltjes_forward(m, x, 1.0) ==
                  doctest::Approx(1.0 / (1.0 + x)).epsilon(1e-14));
    }
    SUBCASE("uniform density on [0,1]") {
        auto grid = std::make_shared<const RadialGrid>(
            build_grid(64, 1.0, GridScheme::uniform));
        SpectralMeasure m;
        m.density = SampledFunction::from_function(
            grid, [](double) { return 1.0; }, 1.0);
        CHECK(stieltjes_forward(m, 1.0, 1.0) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-8));
    }
    SUBCASE("validation") {
        SpectralMeasure m{{{1.0, 1.0}}, std::nullopt};
        CHECK_THROWS(stieltjes_forward(m, -1.0, 1.0));
        CHECK_THROWS(stieltjes_forward(m, 1.0, 0.5));
        SpectralMeasure bad{{{1.0, -1.0}}, std::nullopt};
        CHECK_THROWS(stieltjes_forward(bad, 1.0, 1.0));
    }
}

TEST_CASE("order_lift_check") {
    auto r1 = order_lift_check(1.0, 2.0, 0.0, 1.0);
    CHECK(r1.lhs == doctest::Approx(1.0));
    CHECK(r1.diff <= 1e-8);
    auto r2 = order_lift_check(1.0, 3.0, 1.0, 1.0);
    CHECK(r2.lhs == doctest::Approx(0.5));
    CHECK(r2.diff <= 1e-8);
    auto r3 = order_lift_check(1.5, 2.5, 0.3, 0.7);
    CHECK(r3.diff <= 1e-7);
    CHECK_THROWS(order_lift_check(2.0, 1.0, 0.0, 1.0));
    CHECK_THROWS(order_lift_check(1.0, 2.0, 0.0, -1.0));
}

TEST_CASE("forward transforms of random atom measures pass the suites") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> loc(0.1, 20.0), wgt(0.1, 3.0);
    auto probes = default_probe_points(50.0);
    for (int trial = 0; trial < 3; ++trial) {
        SpectralMeasure m;
        for (int k = 0; k < 4; ++k) m.atoms.push_back({loc(rng), wgt(rng)});
        auto f = [&m](double x) { return stieltjes_forward(m, x, 1.0); };
        CHECK(widder_check(f, 4, probes).all_pass());
        auto g = [&m](double x) { return stieltjes_forward(m, x, 1.7); };
        CHECK(cm_check(g, 6, probes).all_pass());
    }
}

TEST_CASE("verdicts invariant under positive rescaling") {
    auto probes = default_probe_points(50.0);
    auto f = [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); };
    auto g = [&f](double x) { return 100.0 * f(x); };
    auto rf = widder_check(f, 3, probes);
    auto rg = widder_check(g, 3, probes);
    REQUIRE(rf.verdicts.size() == rg.verdicts.size());
    for (std::size_t k = 0; k < rf.verdicts.size(); ++k)
        CHECK(rf.verdicts[k].pass == rg.verdicts[k].pass);
    REQUIRE(rf.first_failure.has_value());
    REQUIRE(rg.first_failure.has_value());
    CHECK(rf.first_failure->n == rg.first_failure->n);
}

TEST_CASE("default_probe_points geometry") {
    auto p = default_probe_points(50.0);
    CHECK(p.front() == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(p.back() == doctest::Approx(50.0).epsilon(1e-12));
    for (std::size_t k = 1; k < p.size(); ++k) {
        CHECK(p[k] > p[k - 1]);
        if (p[k] >= 0.5 && p[k] <= 2.0) CHECK(p[k] - p[k - 1] <= 0.05);
    }
}
