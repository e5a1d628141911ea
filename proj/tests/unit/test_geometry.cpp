#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "porecap/errors.hpp"
#include "porecap/geometry.hpp"

using namespace porecap;

namespace {
const Surface kPlane{SurfaceKind::Plane};
const Surface kSphere{SurfaceKind::UnitSphere};
}  // namespace

TEST_CASE("chord_distance on plane and sphere") {
    CHECK(chord_distance({0, 0, 0}, {3, 4, 0}, kPlane) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(chord_distance({0, 0, 1}, {0, 0, -1}, kSphere) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(chord_distance({0, 0, 1}, {0, 0, 1}, kSphere) == 0.0);
    CHECK_THROWS_AS(chord_distance({0, 0, 0.1}, {1, 0, 0}, kPlane), InvalidInput);
    CHECK_THROWS_AS(chord_distance({0, 0, 0.5}, {0, 0, 1}, kSphere), InvalidInput);
}

TEST_CASE("chord_distance symmetry and triangle inequality on samples") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) {
        const double th = 0.3 + 0.35 * i, ph = 1.7 * i;
        pts.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b) {
            CHECK(chord_distance(pts[a], pts[b], kSphere) ==
                  doctest::Approx(chord_distance(pts[b], pts[a], kSphere)).epsilon(1e-15));
            for (std::size_t c = 0; c < pts.size(); ++c)
                CHECK(chord_distance(pts[a], pts[c], kSphere) <=
                      chord_distance(pts[a], pts[b], kSphere) +
                          chord_distance(pts[b], pts[c], kSphere) + 1e-12);
        }
}

TEST_CASE("validate_nonoverlap planar") {
    PoreConfiguration ok;
    ok.surface = kPlane;
    ok.pores = {{{2, 0, 0}, 1.0}, {{-2, 0, 0}, 1.0}};
    CHECK(validate_nonoverlap(ok).ok());

    PoreConfiguration bad = ok;
    bad.pores = {{{0.9, 0, 0}, 1.0}, {{-0.9, 0, 0}, 1.0}};
    const auto report = validate_nonoverlap(bad);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].first == 0);
    CHECK(report.violations[0].second == 1);
}

TEST_CASE("validate_nonoverlap antipodal caps") {
    // Half-angle pi/8 caps at the poles: angular separation pi > pi/4.
    const double nu = M_PI / 8.0;
    const double r = 2.0 * std::sin(nu / 2.0);
    PoreConfiguration config;
    config.surface = kSphere;
    config.pores = {{{0, 0, 1}, r}, {{0, 0, -1}, r}};
    CHECK(validate_nonoverlap(config).ok());
}

TEST_CASE("fibonacci_sphere basic structure") {
    CHECK_THROWS_AS(fibonacci_sphere(0), InvalidInput);

    const auto three = fibonacci_sphere(1);
    REQUIRE(three.size() == 3);
    CHECK(three[1].z == doctest::Approx(0.0));  // j = 0 lies on the equator

    const auto pts = fibonacci_sphere(25);
    REQUIRE(pts.size() == 51);
    double min_dist = 10.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].norm() == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            min_dist = std::min(min_dist, (pts[i] - pts[j]).norm());
    }
    CHECK(min_dist > 0.0);

    // Deterministic across calls.
    const auto again = fibonacci_sphere(25);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK((pts[i] - again[i]).norm() == 0.0);

    CHECK(kGoldenRatio == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-16));
}

TEST_CASE("platonic vertices") {
    const auto octa = platonic_vertices(PlatonicSolid::Octa);
    REQUIRE(octa.size() == 6);
    for (const auto& v : octa) {
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(v.x) + std::abs(v.y) + std::abs(v.z) == doctest::Approx(1.0));
    }

    const auto tetra = platonic_vertices(PlatonicSolid::Tetra);
    REQUIRE(tetra.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            CHECK(tetra[i].dot(tetra[j]) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));

    // Icosahedron: exactly 3 distinct pairwise chord distances.
    const auto icosa = platonic_vertices(PlatonicSolid::Icosa);
    REQUIRE(icosa.size() == 12);
    std::set<long long> distinct;
    for (std::size_t i = 0; i < icosa.size(); ++i)
        for (std::size_t j = i + 1; j < icosa.size(); ++j)
            distinct.insert(std::llround(1e9 * (icosa[i] - icosa[j]).norm()));
    CHECK(distinct.size() == 3);

    CHECK(platonic_vertices(PlatonicSolid::Cube).size() == 8);
    CHECK(platonic_vertices(PlatonicSolid::Dodeca).size() == 20);
    CHECK_THROWS_AS(platonic_solid_from_name("hexa"), InvalidInput);
}

TEST_CASE("pattern_planar") {
    const auto square = pattern_planar(PlanarPattern::Square, 0, 2.0);
    REQUIRE(square.size() == 4);
    for (const auto& p : square) {
        CHECK(std::abs(p.x) == doctest::Approx(2.0));
        CHECK(std::abs(p.y) == doctest::Approx(2.0));
        CHECK(p.z == 0.0);
    }

    const auto hex = pattern_planar(PlanarPattern::Ring, 6, 2.0);
    REQUIRE(hex.size() == 6);
    for (const auto& p : hex) CHECK(p.norm() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((hex[0] - hex[1]).norm() == doctest::Approx(2.0).epsilon(1e-13));  // hexagon side

    const auto two = pattern_planar(PlanarPattern::Ring, 2, 3.5);
    CHECK((two[0] - two[1]).norm() == doctest::Approx(7.0).epsilon(1e-14));

    CHECK_THROWS_AS(pattern_planar(PlanarPattern::Ring, 1, 2.0), InvalidInput);
}

TEST_CASE("generators produce nonoverlapping configs at small radius") {
    std::map<std::string, std::vector<Vec3>> sets = {
        {"fib", fibonacci_sphere(8)},
        {"icosa", platonic_vertices(PlatonicSolid::Icosa)},
    };
    for (const auto& [name, centers] : sets) {
        CAPTURE(name);
        double min_dist = 10.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
            for (std::size_t j = i + 1; j < centers.size(); ++j)
                min_dist = std::min(min_dist, (centers[i] - centers[j]).norm());
        PoreConfiguration config;
        config.surface = kSphere;
        for (const auto& c : centers) config.pores.push_back({c, 0.4 * min_dist});
        CHECK(validate_nonoverlap(config).ok());
    }
}

TEST_CASE("tangent frames are orthonormal") {
    for (const Vec3& c : fibonacci_sphere(6)) {
        const auto frame = tangent_frame(c, kSphere);
        CHECK(frame.e1.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(frame.e2.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(frame.e1.dot(frame.e2) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(frame.e1.dot(c) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(frame.e2.dot(c) == doctest::Approx(0.0).epsilon(1e-14));
    }
}
