#include <doctest.h>

#include <cmath>

#include "porecap/basis.hpp"
#include "porecap/errors.hpp"
#include "porecap/kernels.hpp"
#include "porecap/potential.hpp"
#include "porecap/quadrature.hpp"

using namespace porecap;

namespace {

// Brute-force 2D quadrature oracle for the induced-potential radial factor:
// (1/2pi) int over the pore of g(dist) q_mj, target on the angular axis t = 0
// with the cosine convention.
double potential_brute_planar(int m, int j, double xi, double alpha) {
    auto outer = [&](double rho) {
        const double inner = adaptive_quad(
            [&](double tau) {
                const double d2 = rho * rho + xi * xi - 2.0 * rho * xi * std::cos(tau);
                return std::cos(j * tau) / std::sqrt(std::max(d2, 1e-300));
            },
            0.0, 2.0 * M_PI, 1e-13, 1e-11);
        return std::pow(rho / alpha, m) / std::sqrt((alpha - rho) * (alpha + rho)) * rho * inner;
    };
    // The radial integrand has a log kink where rho crosses the target radius.
    double total;
    if (xi > 0.0 && xi < alpha)
        total = singular_quad(outer, 0.0, xi, {false, true}, 5e-13, 5e-11) +
                singular_quad(outer, xi, alpha, {true, true}, 5e-13, 5e-11);
    else
        total = singular_quad(outer, 0.0, alpha, {false, true}, 1e-12, 1e-10);
    return total / (2.0 * M_PI);
}

double potential_brute_sphere(int m, int j, double xi, double alpha) {
    auto outer = [&](double eta) {
        const SphereChord p = sphere_chord_params(eta, xi);
        const double inner = adaptive_quad(
            [&](double tau) {
                const double d = std::sqrt(std::max(p.A - p.B * std::cos(tau), 1e-300));
                return std::cos(j * tau) * (1.0 / d + 0.5 * std::log(d / (2.0 + d)));
            },
            0.0, 2.0 * M_PI, 1e-13, 1e-11);
        return std::pow(eta / alpha, m) / std::sqrt((alpha - eta) * (alpha + eta)) * eta * inner;
    };
    double total;
    if (xi > 0.0 && xi < alpha)
        total = singular_quad(outer, 0.0, xi, {false, true}, 5e-13, 5e-11) +
                singular_quad(outer, xi, alpha, {true, true}, 5e-13, 5e-11);
    else
        total = singular_quad(outer, 0.0, alpha, {false, true}, 1e-12, 1e-10);
    return total / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("planar induced potential of the axisymmetric basis is pi/2 inside") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, 4, {512, 65, 0.1});
    const double alpha = 1.0;
    CHECK(induced_potential_planar(0, 0, 0.0, alpha, &kernels) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    for (double xi : {0.2, 0.5, 0.77, 0.9, 0.99})
        CHECK(std::abs(induced_potential_planar(0, 0, xi * alpha, alpha, &kernels) - M_PI / 2.0) <
              1e-10);
}

TEST_CASE("planar induced potential matches the electrified-disc solution outside") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, 2, {512, 65, 0.1});
    // A[q_00] = (pi/2) w_c = asin(alpha/xi) on the plane outside the pore.
    const double alpha = 0.7;
    for (double xi : {0.8, 1.0, 1.4, 2.8}) {
        CAPTURE(xi);
        CHECK(induced_potential_planar(0, 0, xi, alpha, &kernels) ==
              doctest::Approx(std::asin(alpha / xi)).epsilon(1e-10));
    }
}

TEST_CASE("planar induced potential against brute-force quadrature") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, 5, {512, 65, 0.1});
    const double alpha = 0.6;
    struct Case {
        int m, j;
        double xi;
    };
    for (const auto& c : {Case{2, 0, 0.31}, Case{3, 1, 0.45}, Case{5, 3, 0.9}, Case{4, 2, 1.7}}) {
        CAPTURE(c.m);
        CAPTURE(c.j);
        CAPTURE(c.xi);
        const double direct = induced_potential_planar(c.m, c.j, c.xi, alpha, &kernels);
        const double brute = potential_brute_planar(c.m, c.j, c.xi, alpha);
        CHECK(std::abs(direct - brute) < 1e-9);
    }
}

TEST_CASE("planar far field is monopole-like") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, 2, {512, 65, 0.1});
    const double alpha = 0.05;
    for (int m : {0, 2}) {
        const double monopole = flux_basis_total_flux({m, 0}, alpha) / (2.0 * M_PI);
        const double xi = 100.0 * alpha;
        const double p = induced_potential_planar(m, 0, xi, alpha, &kernels);
        CHECK(std::abs(p * xi / monopole - 1.0) < 0.01);
    }
}

TEST_CASE("spherical induced potential basics") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::UnitSphere}, 4, {512, 129, 0.1});
    // j >= 1 modes vanish on the pore axis.
    CHECK(induced_potential_sphere(1, 1, 0.0, 0.3, &kernels) == doctest::Approx(0.0));
    CHECK(induced_potential_sphere(3, 3, 0.0, 0.3, &kernels) == doctest::Approx(0.0));

    // Axisymmetric mode against the brute-force oracle, inside and outside.
    const double alpha = 0.1;
    const double far = induced_potential_sphere(0, 0, 1.0, alpha, &kernels);
    CHECK(std::abs(far - potential_brute_sphere(0, 0, 1.0, alpha)) < 1e-9);
    const double mid = induced_potential_sphere(2, 0, 0.35, alpha, &kernels);
    CHECK(std::abs(mid - potential_brute_sphere(2, 0, 0.35, alpha)) < 1e-9);
    const double inside = induced_potential_sphere(0, 0, 0.04, alpha, &kernels);
    CHECK(std::abs(inside - potential_brute_sphere(0, 0, 0.04, alpha)) < 5e-9);
}

TEST_CASE("sphere profile approaches the planar one for small pores") {
    const KernelTable kp = KernelTable::build({SurfaceKind::Plane}, 2, {512, 65, 0.1});
    const KernelTable ks = KernelTable::build({SurfaceKind::UnitSphere}, 2, {512, 65, 0.1});
    for (double alpha : {0.05, 0.01}) {
        for (double frac : {0.3, 0.9, 1.6}) {
            const double xi = frac * alpha;
            const double pl = induced_potential_planar(0, 0, xi, alpha, &kp);
            const double sp = induced_potential_sphere(0, 0, xi, alpha, &ks);
            CAPTURE(alpha);
            CAPTURE(frac);
            CHECK(std::abs(sp - pl) < 3.0 * alpha * std::abs(std::log(alpha)));
        }
    }
}

TEST_CASE("potential table matches direct evaluation") {
    const int M = 6;
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, M, {1024, 65, 0.1});
    const double alpha = 0.4;
    PotentialTableParams params;
    params.xi_max = 6.0;
    const PotentialTable table =
        PotentialTable::build({SurfaceKind::Plane}, alpha, M, kernels, params);

    // Off-grid queries across all segments.
    struct Case {
        int m, j;
        double xi;
    };
    for (const auto& c : {Case{0, 0, 0.123}, Case{2, 0, 0.3999}, Case{3, 1, 0.40121},
                          Case{6, 2, 0.513}, Case{4, 0, 1.77}, Case{5, 3, 4.9}}) {
        CAPTURE(c.m);
        CAPTURE(c.j);
        CAPTURE(c.xi);
        const double direct = induced_potential_planar(c.m, c.j, c.xi, alpha, &kernels);
        CHECK(std::abs(table.radial(c.m, c.j, c.xi) - direct) < 1e-9);
    }

    // Continuity across the pore edge (one ulp each side; the profile itself
    // varies like sqrt(|xi - alpha|), so wider offsets probe real variation).
    for (int m : {0, 3, 6}) {
        const int j = m % 2;
        const double left = table.radial(m, j, alpha);
        const double right = table.radial(m, j, std::nextafter(alpha, 1.0));
        CHECK(std::abs(left - right) < 1e-8);
    }

    // Angular factor conventions via eval.
    CHECK(table.eval({2, 2}, 0.3, 0.4) ==
          doctest::Approx(table.radial(2, 2, 0.3) * std::sin(2 * 0.4)).epsilon(1e-14));
    CHECK(table.eval({2, -2}, 0.3, 0.4) ==
          doctest::Approx(table.radial(2, 2, 0.3) * std::cos(2 * 0.4)).epsilon(1e-14));
}

TEST_CASE("sphere potential table matches direct evaluation including the antipode") {
    const int M = 4;
    const KernelTable kernels = KernelTable::build({SurfaceKind::UnitSphere}, M, {1024, 129, 0.1});
    const double alpha = 0.35;
    const PotentialTable table =
        PotentialTable::build({SurfaceKind::UnitSphere}, alpha, M, kernels, {});

    struct Case {
        int m, j;
        double xi;
    };
    for (const auto& c : {Case{0, 0, 0.21}, Case{2, 0, 0.349}, Case{1, 1, 0.42}, Case{3, 1, 1.2},
                          Case{4, 2, 1.93}, Case{2, 2, 1.999}, Case{0, 0, 2.0}}) {
        CAPTURE(c.m);
        CAPTURE(c.j);
        CAPTURE(c.xi);
        const double direct = induced_potential_sphere(c.m, c.j, c.xi, alpha, &kernels);
        CHECK(std::abs(table.radial(c.m, c.j, c.xi) - direct) < 2e-9);
    }
}

TEST_CASE("potential table rejects coarse resolutions") {
    const KernelTable kernels = KernelTable::build({SurfaceKind::Plane}, 2, {512, 65, 0.1});
    PotentialTableParams params;
    params.inside_nodes = 8;
    CHECK_THROWS_AS(PotentialTable::build({SurfaceKind::Plane}, 0.5, 2, kernels, params),
                    InvalidInput);
    CHECK_THROWS_AS(PotentialTable::build({SurfaceKind::Plane}, 0.5, 10, kernels, {}),
                    InvalidInput);  // kernel table does not cover M = 10
}
