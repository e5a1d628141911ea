#include "porecap/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "porecap/errors.hpp"

namespace porecap {

namespace {

void check_on_surface(const Vec3& p, const Surface& surface, const char* who) {
    if (surface.kind == SurfaceKind::Plane) {
        if (std::abs(p.z) > kSurfaceTol)
            throw InvalidInput(std::string(who) + ": point not in the plane z = 0");
    } else {
        if (std::abs(p.norm() - 1.0) > kSurfaceTol)
            throw InvalidInput(std::string(who) + ": point not on the unit sphere");
    }
}

}  // namespace

void PoreConfiguration::validate_basic() const {
    if (pores.empty()) throw InvalidInput("configuration has no pores");
    if (!(diffusivity > 0.0)) throw InvalidInput("diffusivity must be positive");
    for (const Pore& p : pores) {
        if (!(p.radius > 0.0)) throw InvalidInput("pore radius must be positive");
        check_on_surface(p.center, surface, "pore center");
        if (surface.kind == SurfaceKind::UnitSphere && !(p.radius < 2.0))
            throw InvalidInput("spherical pore chord radius must be < 2");
    }
}

bool PoreConfiguration::common_radius(double* radius_out) const {
    if (pores.empty()) return false;
    const double r0 = pores.front().radius;
    for (const Pore& p : pores)
        if (p.radius != r0) return false;
    if (radius_out) *radius_out = r0;
    return true;
}

double chord_distance(const Vec3& a, const Vec3& b, const Surface& surface) {
    check_on_surface(a, surface, "chord_distance");
    check_on_surface(b, surface, "chord_distance");
    if (surface.kind == SurfaceKind::Plane) {
        const double dx = a.x - b.x, dy = a.y - b.y;
        return std::sqrt(dx * dx + dy * dy);
    }
    // sqrt(2 - 2 a.b) evaluated through the difference for accuracy near a = b.
    const double d = (a - b).norm();
    return std::min(d, 2.0);
}

OverlapReport validate_nonoverlap(const PoreConfiguration& config) {
    config.validate_basic();
    OverlapReport report;
    const bool sphere = config.surface.kind == SurfaceKind::UnitSphere;
    const std::size_t n = config.pores.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Pore& a = config.pores[i];
            const Pore& b = config.pores[j];
            if (sphere) {
                const double chord = chord_distance(a.center, b.center, config.surface);
                const double gamma = 2.0 * std::asin(std::min(1.0, chord / 2.0));
                const double needed =
                    2.0 * std::asin(a.radius / 2.0) + 2.0 * std::asin(b.radius / 2.0);
                if (gamma <= needed + kOverlapMargin)
                    report.violations.push_back({i, j, gamma, needed});
            } else {
                const double dist = chord_distance(a.center, b.center, config.surface);
                const double needed = a.radius + b.radius;
                if (dist <= needed + kOverlapMargin)
                    report.violations.push_back({i, j, dist, needed});
            }
        }
    }
    return report;
}

std::vector<Vec3> fibonacci_sphere(int k) {
    if (k < 1) throw InvalidInput("fibonacci_sphere: k must be >= 1");
    const int n = 2 * k + 1;
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int j = -k; j <= k; ++j) {
        const double sin_lat = 2.0 * j / n;
        const double cos_lat = std::sqrt(1.0 - sin_lat * sin_lat);
        const double phi = 2.0 * M_PI * j / kGoldenRatio;
        pts.push_back({cos_lat * std::cos(phi), cos_lat * std::sin(phi), sin_lat});
    }
    return pts;
}

PlatonicSolid platonic_solid_from_name(const std::string& name) {
    if (name == "tetra") return PlatonicSolid::Tetra;
    if (name == "octa") return PlatonicSolid::Octa;
    if (name == "cube") return PlatonicSolid::Cube;
    if (name == "icosa") return PlatonicSolid::Icosa;
    if (name == "dodeca") return PlatonicSolid::Dodeca;
    throw InvalidInput("unknown platonic solid: " + name);
}

std::vector<Vec3> platonic_vertices(PlatonicSolid solid) {
    std::vector<Vec3> v;
    const double phi = kGoldenRatio;
    switch (solid) {
        case PlatonicSolid::Tetra:
            v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            break;
        case PlatonicSolid::Octa:
            v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
            break;
        case PlatonicSolid::Cube:
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1}) v.push_back({double(sx), double(sy), double(sz)});
            break;
        case PlatonicSolid::Icosa:
            for (int s1 : {-1, 1})
                for (int s2 : {-1, 1}) {
                    v.push_back({0, s1 * 1.0, s2 * phi});
                    v.push_back({s1 * 1.0, s2 * phi, 0});
                    v.push_back({s2 * phi, 0, s1 * 1.0});
                }
            break;
        case PlatonicSolid::Dodeca:
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1}) v.push_back({double(sx), double(sy), double(sz)});
            for (int s1 : {-1, 1})
                for (int s2 : {-1, 1}) {
                    v.push_back({0, s1 / phi, s2 * phi});
                    v.push_back({s1 / phi, s2 * phi, 0});
                    v.push_back({s2 * phi, 0, s1 / phi});
                }
            break;
    }
    for (Vec3& p : v) p = p.normalized();
    return v;
}

std::vector<Vec3> pattern_planar(PlanarPattern kind, int count, double scale) {
    if (!(scale > 0.0)) throw InvalidInput("pattern_planar: scale must be positive");
    std::vector<Vec3> pts;
    if (kind == PlanarPattern::Square) {
        for (int sx : {1, -1})
            for (int sy : {1, -1}) pts.push_back({sx * scale, sy * scale, 0.0});
    } else {
        if (count < 2) throw InvalidInput("pattern_planar: ring requires count >= 2");
        for (int i = 0; i < count; ++i) {
            const double t = 2.0 * M_PI * i / count;
            pts.push_back({scale * std::cos(t), scale * std::sin(t), 0.0});
        }
    }
    return pts;
}

TangentFrame tangent_frame(const Vec3& center, const Surface& surface) {
    if (surface.kind == SurfaceKind::Plane) return {{1, 0, 0}, {0, 1, 0}};
    const Vec3 n = center.normalized();
    // Cross with the coordinate axis least aligned with n; ties broken by index.
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3 axis{1, 0, 0};
    if (ay <= ax && ay <= az)
        axis = {0, 1, 0};
    else if (az <= ax && az <= ay)
        axis = {0, 0, 1};
    const Vec3 e1 = n.cross(axis).normalized();
    const Vec3 e2 = n.cross(e1);
    return {e1, e2};
}

}  // namespace porecap
