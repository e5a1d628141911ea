#include <doctest.h>

#include <cmath>

#include "porecap/errors.hpp"
#include "porecap/quadrature.hpp"

using namespace porecap;

TEST_CASE("log endpoint singularity") {
    const double v = singular_quad([](double x) { return std::log(x); }, 0.0, 1.0, {true, false},
                                   1e-15, 1e-13);
    CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("inverse square root endpoint singularity") {
    const double v = singular_quad([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0,
                                   {false, true}, 1e-15, 1e-13);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("smooth Wallis integrand") {
    const double v = adaptive_quad([](double s) { return std::pow(std::sin(s), 3); }, 0.0,
                                   M_PI / 2.0, 1e-15, 1e-14);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integrand") {
    const double v =
        adaptive_quad([](double x) { return std::cos(20.0 * x); }, 0.0, M_PI, 1e-14, 1e-12);
    CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    const double w = adaptive_quad([](double x) { return std::cos(20.0 * x) * std::cos(20.0 * x); },
                                   0.0, 2.0 * M_PI, 1e-14, 1e-12);
    CHECK(w == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("convergence failure carries best estimate") {
    QuadOptions opts;
    opts.abs_tol = 1e-30;
    opts.rel_tol = 1e-30;
    opts.max_intervals = 12;
    opts.throw_on_failure = true;
    bool threw = false;
    try {
        singular_quad_result([](double x) { return std::log(x); }, 0.0, 1.0, {true, false}, opts);
    } catch (const ConvergenceFailure& e) {
        threw = true;
        CHECK(e.best_estimate == doctest::Approx(-1.0).epsilon(1e-3));
        CHECK(e.error_bound > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("reversed limits change sign") {
    const double fwd = adaptive_quad([](double x) { return x * x; }, 0.0, 1.0);
    const double rev = adaptive_quad([](double x) { return x * x; }, 1.0, 0.0);
    CHECK(fwd == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(rev == doctest::Approx(-fwd).epsilon(1e-15));
}

TEST_CASE("gauss_legendre rules integrate polynomials exactly") {
    for (int n : {8, 16, 48}) {
        const auto& rule = gauss_legendre(n);
        double sum = 0.0, x3 = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += rule.weights[i];
            x3 += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
        }
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(x3 == doctest::Approx(2.0 / (2.0 * n - 1.0)).epsilon(1e-12));
    }
}
