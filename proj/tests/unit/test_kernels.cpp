#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "porecap/errors.hpp"
#include "porecap/kernels.hpp"
#include "porecap/quadrature.hpp"

using namespace porecap;

namespace {

// Brute-force oracles: adaptive quadrature of the defining integrals.
double h_planar_brute(int j, double beta) {
    return adaptive_quad(
        [&](double tau) {
            return std::cos(j * tau) / std::sqrt(beta * beta + 1.0 - 2.0 * beta * std::cos(tau));
        },
        0.0, 2.0 * M_PI, 1e-15, 1e-13);
}

double h_sphere_brute(int j, double eta, double xi) {
    const SphereChord p = sphere_chord_params(eta, xi);
    return (1.0 / (2.0 * M_PI)) *
           adaptive_quad(
               [&](double tau) {
                   const double d = std::sqrt(std::max(0.0, p.A - p.B * std::cos(tau)));
                   return std::cos(j * tau) *
                          (1.0 / d + 0.5 * std::log(d) - 0.5 * std::log(2.0 + d));
               },
               0.0, 2.0 * M_PI, 1e-14, 1e-12);
}

}  // namespace

TEST_CASE("surface kernels") {
    CHECK(g_planar(2.0) == doctest::Approx(0.5));
    CHECK(g_planar(1.0) == doctest::Approx(1.0));
    CHECK(g_planar(0.1) == doctest::Approx(10.0));
    CHECK_THROWS_AS(g_planar(0.0), DomainError);

    CHECK(g_sphere(2.0) == doctest::Approx((1.0 - std::log(2.0)) / 2.0).epsilon(1e-15));
    CHECK(g_sphere(1.0) == doctest::Approx(1.0 + 0.5 * std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK(g_sphere(1e-8) * 1e-8 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(g_sphere(2.5), DomainError);
}

TEST_CASE("elliptic ring integral") {
    CHECK(elliptic_ring_integral(0.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    // Reciprocity beta -> 1/beta.
    CHECK(elliptic_ring_integral(2.0) ==
          doctest::Approx(0.5 * elliptic_ring_integral(0.5)).epsilon(1e-14));
    // Brute-force quadrature oracle.
    const double brute = adaptive_quad(
        [](double tau) { return 1.0 / std::sqrt(0.25 + 1.0 - std::cos(tau)); }, 0.0, 2.0 * M_PI,
        1e-15, 1e-13);
    CHECK(elliptic_ring_integral(0.5) == doctest::Approx(brute).epsilon(1e-12));
    CHECK_THROWS_AS(elliptic_ring_integral(1.0), SingularInput);

    // Internal consistency with the AGM-computed K.
    for (double beta : {0.1, 0.3, 0.6, 0.9}) {
        const double k2 = 4.0 * beta / ((1.0 + beta) * (1.0 + beta));
        CHECK(elliptic_ring_integral(beta) * (1.0 + beta) / 4.0 ==
              doctest::Approx(elliptic_K(k2)).epsilon(1e-15));
    }
    CHECK(elliptic_K(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
}

TEST_CASE("planar moment H_j") {
    CHECK(h_planar(0, 0.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(h_planar(1, 0.0) == doctest::Approx(0.0));
    CHECK(h_planar(3, 0.7) == doctest::Approx(h_planar_brute(3, 0.7)).epsilon(1e-12));
    CHECK_THROWS_AS(h_planar(0, 1.0), SingularInput);
}

TEST_CASE("planar reciprocity") {
    for (int j : {0, 1, 2, 4, 8})
        for (double beta : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
            CAPTURE(j);
            CAPTURE(beta);
            CHECK(std::abs(h_planar(j, 1.0 / beta) - beta * h_planar(j, beta)) /
                      std::max(1.0, std::abs(h_planar(j, beta))) <
                  1e-11);
        }
}

TEST_CASE("spherical moment H_j") {
    // eta = 0, xi = 1: d is identically 1.
    CHECK(h_sphere(0, 0.0, 1.0) == doctest::Approx(1.0 - 0.5 * std::log(3.0)).epsilon(1e-13));
    CHECK(h_sphere(2, 0.0, 0.7) == doctest::Approx(0.0));
    CHECK(h_sphere(1, 0.8, 1.3) == doctest::Approx(h_sphere_brute(1, 0.8, 1.3)).epsilon(1e-11));
    CHECK_THROWS_AS(h_sphere(0, 0.0, 0.0), SingularInput);
    CHECK_THROWS_AS(h_sphere(0, 0.5, 0.5), SingularInput);
}

TEST_CASE("spherical symmetry in (eta, xi)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(0.05, 1.95);
    for (int trial = 0; trial < 40; ++trial) {
        const double eta = unif(rng);
        double xi = unif(rng);
        if (std::abs(eta - xi) < 0.02) xi += 0.05;
        const int j = trial % 5;
        CAPTURE(j);
        CAPTURE(eta);
        CAPTURE(xi);
        CHECK(std::abs(h_sphere(j, eta, xi) - h_sphere(j, xi, eta)) < 1e-11);
    }
}

TEST_CASE("decomposition matches brute-force quadrature on random points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    while (checked < 100) {
        const int j = static_cast<int>(unif(rng) * 6.0);
        if (checked % 2 == 0) {
            const double beta = 0.98 * unif(rng);
            CAPTURE(j);
            CAPTURE(beta);
            CHECK(std::abs(h_planar(j, beta) - h_planar_brute(j, beta)) < 1e-10);
        } else {
            const double eta = 0.05 + 1.9 * unif(rng);
            double xi = 0.05 + 1.9 * unif(rng);
            if (std::abs(eta - xi) < 0.05) xi = std::min(1.95, xi + 0.1);
            CAPTURE(j);
            CAPTURE(eta);
            CAPTURE(xi);
            CHECK(std::abs(h_sphere(j, eta, xi) - h_sphere_brute(j, eta, xi)) < 1e-10);
        }
        ++checked;
    }
}

TEST_CASE("kernel table interpolation accuracy") {
    KernelTableParams params;
    params.planar_nodes = 1024;
    params.sphere_nodes = 257;
    const KernelTable table = KernelTable::build({SurfaceKind::UnitSphere}, 6, params);

    // Planar: grid point reproduces the direct value; off-grid within 1e-9.
    CHECK(table.h_planar_tab(0, 0.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    for (double beta : {0.1234, 0.333, 0.5678, 0.91, 0.999})
        for (int j : {0, 1, 3, 6}) {
            CAPTURE(beta);
            CAPTURE(j);
            CHECK(std::abs(table.h_planar_tab(j, beta) - h_planar(j, beta)) < 1e-9);
        }
    // Reciprocity built in.
    CHECK(table.h_planar_tab(2, 4.0) == doctest::Approx(h_planar(2, 4.0)).epsilon(1e-9));

    // Sphere: away from the diagonal, interpolated vs direct.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0.05, 1.95);
    for (int trial = 0; trial < 60; ++trial) {
        const double eta = unif(rng);
        double xi = unif(rng);
        if (std::abs(eta - xi) < 0.25) continue;  // inside the direct band anyway
        const int j = trial % 7;
        CAPTURE(j);
        CAPTURE(eta);
        CAPTURE(xi);
        CHECK(std::abs(table.h_sphere_tab(j, eta, xi) - h_sphere(j, eta, xi)) < 1e-9);
    }
    // Inside the band the smooth moment falls back to direct evaluation.
    CHECK(table.h_sphere_tab(1, 0.5, 0.52) ==
          doctest::Approx(h_sphere(1, 0.5, 0.52)).epsilon(1e-10));
}

TEST_CASE("kernel table cache round trip is bit identical") {
    KernelTableParams params;
    params.planar_nodes = 256;
    params.sphere_nodes = 65;
    const auto dir = std::filesystem::temp_directory_path() / "porecap_test_cache";
    std::filesystem::remove_all(dir);

    const KernelTable built = KernelTable::cached({SurfaceKind::Plane}, 3, params, dir);
    const auto file = dir / KernelTable::cache_name({SurfaceKind::Plane}, 3, params);
    REQUIRE(std::filesystem::exists(file));

    // Reload and compare stored values bitwise via the file: rebuild into a
    // second file and compare contents.
    const auto file2 = dir / "rebuild.bin";
    KernelTable::build({SurfaceKind::Plane}, 3, params).save(file2);
    std::ifstream a(file, std::ios::binary), b(file2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)),
                              std::istreambuf_iterator<char>());
    const std::string bytes_b((std::istreambuf_iterator<char>(b)),
                              std::istreambuf_iterator<char>());
    CHECK(bytes_a == bytes_b);
    CHECK(!bytes_a.empty());

    // Cache hit returns the same values.
    const KernelTable loaded = KernelTable::cached({SurfaceKind::Plane}, 3, params, dir);
    for (double beta : {0.0, 0.25, 0.77, 0.999})
        CHECK(loaded.h_planar_tab(2, beta) == built.h_planar_tab(2, beta));
    std::filesystem::remove_all(dir);
}

TEST_CASE("kernel table rejects bad parameters") {
    KernelTableParams params;
    params.planar_nodes = 8;
    CHECK_THROWS_AS(KernelTable::build({SurfaceKind::Plane}, 2, params), InvalidInput);
    CHECK_THROWS_AS(KernelTable::build({SurfaceKind::Plane}, -1, KernelTableParams{}),
                    InvalidInput);
}
