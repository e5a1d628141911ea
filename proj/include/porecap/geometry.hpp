#pragma once

// Pore configurations on the plane z = 0 (exterior domain z > 0) and on the
// unit sphere (exterior |x| > 1), plus the point-set generators used by the
// experiments. All lengths are dimensionless; the sphere always has unit radius.

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace porecap {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
    Vec3 operator-(const Vec3& v) const { return {x - v.x, y - v.y, z - v.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
    Vec3 cross(const Vec3& v) const {
        return {y * v.z - z * v.y, z * v.x - x * v.z, x * v.y - y * v.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

enum class SurfaceKind { Plane, UnitSphere };

struct Surface {
    SurfaceKind kind = SurfaceKind::Plane;
};

// A circular absorbing patch. On the plane the radius is the disc radius; on
// the sphere it is the chord radius alpha = 2 sin(nu/2) of a cap with
// half-angle nu, so 0 < radius < 2 there.
struct Pore {
    Vec3 center;
    double radius = 0.0;
};

struct PoreConfiguration {
    Surface surface;
    std::vector<Pore> pores;
    double diffusivity = 1.0;

    // Throws InvalidInput when a structural invariant is broken (empty pore
    // list, off-surface center, non-positive radius, bad diffusivity).
    void validate_basic() const;

    // True when every pore has the same radius (required by the solver).
    bool common_radius(double* radius_out = nullptr) const;
};

struct OverlapViolation {
    std::size_t first = 0;
    std::size_t second = 0;
    double separation = 0.0;  // center distance (plane) or angular separation (sphere)
    double required = 0.0;
};

struct OverlapReport {
    std::vector<OverlapViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Chord distance between two points of the surface: Euclidean in-plane
// distance on the plane, |x - x'| = sqrt(2 - 2 x.x') on the unit sphere.
double chord_distance(const Vec3& a, const Vec3& b, const Surface& surface);

// Reports every pair of pores whose discs/caps intersect. Does not throw on
// violations; structural defects still raise via validate_basic.
OverlapReport validate_nonoverlap(const PoreConfiguration& config);

// Spherical Fibonacci lattice with N = 2k+1 points: sin(latitude_j) = 2j/N,
// azimuth_j = 2*pi*j/golden_ratio, j = -k..k.
std::vector<Vec3> fibonacci_sphere(int k);

enum class PlatonicSolid { Tetra, Octa, Cube, Icosa, Dodeca };
PlatonicSolid platonic_solid_from_name(const std::string& name);

// Unit vertices of the regular solids (4/6/8/12/20 points).
std::vector<Vec3> platonic_vertices(PlatonicSolid solid);

enum class PlanarPattern { Square, Ring };

// Square: the four points (+-scale, +-scale, 0), count ignored.
// Ring: `count` points equally spaced on the circle of radius `scale` in z=0.
std::vector<Vec3> pattern_planar(PlanarPattern kind, int count, double scale);

// Orthonormal tangent frame at a pore center, deterministic in the center
// coordinates. Used to give each pore a reproducible local azimuth origin.
struct TangentFrame {
    Vec3 e1, e2;
};
TangentFrame tangent_frame(const Vec3& center, const Surface& surface);

constexpr double kGoldenRatio = 1.6180339887498948482;
constexpr double kSurfaceTol = 1e-9;      // |center| or |z| tolerance for "on surface"
constexpr double kOverlapMargin = 1e-12;  // strictness margin for non-overlap

}  // namespace porecap
