#include <doctest.h>

#include <cmath>
#include <vector>

#include "porecap/interp.hpp"

using namespace porecap;

TEST_CASE("local quintic reproduces smooth data tightly") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 400; ++i) {
        const double x = i / 400.0;
        xs.push_back(x);
        ys.push_back(std::exp(2.0 * x));
    }
    const LocalQuintic interp(xs, ys);
    for (double x : {0.013, 0.251, 0.499, 0.871})
        CHECK(std::abs(interp(x) - std::exp(2.0 * x)) < 1e-13);
    // Node values are exact.
    CHECK(interp(xs[37]) == ys[37]);
}

TEST_CASE("local quintic is exact for degree five polynomials") {
    std::vector<double> xs, ys;
    auto poly = [](double x) { return ((((x - 2.0) * x + 3.0) * x - 1.0) * x + 0.5) * x - 4.0; };
    for (int i = 0; i <= 40; ++i) {
        const double x = 0.1 * i;
        xs.push_back(x);
        ys.push_back(poly(x));
    }
    const LocalQuintic interp(xs, ys);
    for (double x : {0.05, 1.23, 2.531, 3.99})
        CHECK(interp(x) == doctest::Approx(poly(x)).epsilon(1e-13));
}

TEST_CASE("local quintic handles nonuniform grids") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 200; ++i) {
        const double x = std::pow(i / 200.0, 2.0);
        xs.push_back(x);
        ys.push_back(std::sin(3.0 * x));
    }
    xs[0] = 0.0;
    const LocalQuintic interp(xs, ys);
    for (double x : {0.001, 0.1, 0.5, 0.93})
        CHECK(std::abs(interp(x) - std::sin(3.0 * x)) < 1e-9);
}

TEST_CASE("bicubic uniform 2D interpolation") {
    const std::size_t n = 41;
    const double h = 1.0 / (n - 1);
    std::vector<double> vals(n * n);
    auto f = [](double x, double y) { return std::sin(2.0 * x) * std::cos(1.5 * y) + x * y; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vals[i * n + j] = f(i * h, j * h);
    const BicubicUniform interp(0.0, h, n, 0.0, h, n, vals);
    for (double x : {0.12, 0.5, 0.83})
        for (double y : {0.07, 0.44, 0.91}) {
            CHECK(std::abs(interp(x, y) - f(x, y)) < 5e-7);
        }
    // Exact at nodes.
    CHECK(interp(10 * h, 20 * h) == doctest::Approx(vals[10 * n + 20]).epsilon(1e-15));
}
