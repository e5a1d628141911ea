#include "porecap/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "porecap/errors.hpp"

namespace porecap {

using nlohmann::json;

RunConfig RunConfig::from_json(const json& j) {
    RunConfig rc;
    try {
        rc.surface = j.value("surface", "plane");
        if (rc.surface != "plane" && rc.surface != "sphere")
            throw InvalidInput("surface must be 'plane' or 'sphere'");
        if (j.contains("pores") && j.contains("generator"))
            throw InvalidInput("config must have exactly one of 'pores' or 'generator'");
        if (j.contains("pores")) {
            for (const auto& pj : j.at("pores")) {
                Pore p;
                const auto& c = pj.at("center");
                p.center = {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
                p.radius = pj.at("radius").get<double>();
                rc.pores.push_back(p);
            }
        } else if (j.contains("generator")) {
            GeneratorSpec g;
            const auto& gj = j.at("generator");
            g.kind = gj.at("kind").get<std::string>();
            g.k = gj.value("k", 0);
            g.solid = gj.value("solid", "");
            g.count = gj.value("count", 0);
            g.scale = gj.value("scale", 0.0);
            g.radius = gj.at("radius").get<double>();
            rc.generator = g;
        } else {
            throw InvalidInput("config must have exactly one of 'pores' or 'generator'");
        }
        rc.diffusivity = j.value("diffusivity", 1.0);
        rc.modes = j.value("modes", 10);
        if (j.contains("collocation")) {
            rc.angular_nodes = j.at("collocation").value("angular", 0);
            rc.radial_nodes = j.at("collocation").value("radial", 40);
        }
        if (j.contains("tolerances")) {
            rc.quad_abs_tol = j.at("tolerances").value("quad_abs", 1e-13);
            rc.quad_rel_tol = j.at("tolerances").value("quad_rel", 1e-10);
        }
        if (j.contains("tables")) {
            rc.kernel_params.planar_nodes = j.at("tables").value("planar_nodes", 2048);
            rc.kernel_params.sphere_nodes = j.at("tables").value("sphere_nodes", 513);
            rc.xi_max = j.at("tables").value("xi_max", 0.0);
        }
        rc.compare = j.value("compare", "none");
        if (rc.compare != "none" && rc.compare != "asymptotic" && rc.compare != "series" &&
            rc.compare != "homogenized")
            throw InvalidInput("unknown compare target: " + rc.compare);
        rc.output = j.value("output", "");
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config parse error: ") + e.what());
    }
    return rc;
}

json RunConfig::to_json() const {
    json j;
    j["surface"] = surface;
    if (generator) {
        json g;
        g["kind"] = generator->kind;
        if (generator->kind == "fibonacci") g["k"] = generator->k;
        if (generator->kind == "platonic") g["solid"] = generator->solid;
        if (generator->kind == "ring") g["count"] = generator->count;
        if (generator->kind == "square" || generator->kind == "ring")
            g["scale"] = generator->scale;
        g["radius"] = generator->radius;
        j["generator"] = g;
    } else {
        json arr = json::array();
        for (const Pore& p : pores)
            arr.push_back({{"center", {p.center.x, p.center.y, p.center.z}},
                           {"radius", p.radius}});
        j["pores"] = arr;
    }
    j["diffusivity"] = diffusivity;
    j["modes"] = modes;
    j["collocation"] = {{"angular", angular_nodes}, {"radial", radial_nodes}};
    j["tolerances"] = {{"quad_abs", quad_abs_tol}, {"quad_rel", quad_rel_tol}};
    j["tables"] = {{"planar_nodes", kernel_params.planar_nodes},
                   {"sphere_nodes", kernel_params.sphere_nodes},
                   {"xi_max", xi_max}};
    j["compare"] = compare;
    j["output"] = output;
    return j;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

PoreConfiguration RunConfig::materialize() const {
    PoreConfiguration config;
    config.surface.kind = (surface == "sphere") ? SurfaceKind::UnitSphere : SurfaceKind::Plane;
    config.diffusivity = diffusivity;
    if (generator) {
        const GeneratorSpec& g = *generator;
        if (!(g.radius > 0.0)) throw InvalidInput("generator radius must be positive");
        std::vector<Vec3> centers;
        if (g.kind == "fibonacci") {
            centers = fibonacci_sphere(g.k);
        } else if (g.kind == "platonic") {
            centers = platonic_vertices(platonic_solid_from_name(g.solid));
        } else if (g.kind == "square") {
            centers = pattern_planar(PlanarPattern::Square, 0, g.scale);
        } else if (g.kind == "ring") {
            centers = pattern_planar(PlanarPattern::Ring, g.count, g.scale);
        } else {
            throw InvalidInput("unknown generator kind: " + g.kind);
        }
        const bool spherical_gen = (g.kind == "fibonacci" || g.kind == "platonic");
        if (spherical_gen != (config.surface.kind == SurfaceKind::UnitSphere))
            throw InvalidInput("generator kind does not match the configured surface");
        for (const Vec3& c : centers) config.pores.push_back({c, g.radius});
    } else {
        config.pores = pores;
    }
    config.validate_basic();
    return config;
}

SpectralParams RunConfig::spectral_params() const {
    SpectralParams p;
    p.truncation_degree = modes;
    p.angular_nodes = angular_nodes;
    p.radial_nodes = radial_nodes;
    p.quad_abs_tol = quad_abs_tol;
    p.quad_rel_tol = quad_rel_tol;
    p.kernel_params = kernel_params;
    p.potential_params.xi_max = xi_max;
    return p;
}

bool RunConfig::operator==(const RunConfig& other) const {
    return to_json() == other.to_json();
}

json ResultRecord::to_json() const {
    json comps = json::array();
    for (const auto& c : comparisons)
        comps.push_back({{"target", c.target}, {"value", c.value}, {"rel_err", c.rel_err}});
    return json{{"run_id", run_id},
                {"config", config_echo},
                {"surface", surface},
                {"n_pores", n_pores},
                {"modes", modes},
                {"flux_total", flux_total},
                {"capacitance", capacitance},
                {"per_pore_flux", per_pore_flux},
                {"comparisons", comps},
                {"residual_max", residual_max},
                {"solve_residual", solve_residual},
                {"condition_estimate", condition_estimate},
                {"timings",
                 {{"tables_s", seconds_tables},
                  {"assembly_s", seconds_assembly},
                  {"solve_s", seconds_solve},
                  {"total_s", seconds_total}}}};
}

double reference_flux(const std::string& target, const PoreConfiguration& config) {
    const bool sphere = config.surface.kind == SurfaceKind::UnitSphere;
    if (target == "asymptotic") {
        std::vector<Vec3> centers;
        for (const Pore& p : config.pores) centers.push_back(p.center);
        if (sphere) {
            double alpha = 0.0;
            if (!config.common_radius(&alpha))
                throw InvalidInput("sphere asymptotics require a common radius");
            return sphere_asymptotic_flux(centers, alpha, config.diffusivity).value;
        }
        std::vector<double> radii;
        for (const Pore& p : config.pores) radii.push_back(p.radius);
        return planar_asymptotic_flux(centers, radii, 1.0, config.diffusivity).value;
    }
    if (target == "series") {
        if (sphere || config.pores.size() != 2 || config.pores[0].radius != 1.0 ||
            config.pores[1].radius != 1.0)
            throw InvalidInput("series comparison requires two planar unit pores");
        const double d = (config.pores[0].center - config.pores[1].center).norm();
        return strieder_two_pore_flux(d, config.diffusivity).value;
    }
    if (target == "homogenized") {
        double alpha = 0.0;
        if (!sphere || !config.common_radius(&alpha))
            throw InvalidInput("homogenized comparison requires spherical pores of equal radius");
        const double sigma = static_cast<double>(config.pores.size()) * alpha * alpha / 4.0;
        return homogenized_flux(sigma, alpha, config.diffusivity);
    }
    throw InvalidInput("unknown comparison target: " + target);
}

std::string config_run_id(const RunConfig& config) {
    const std::string canon = config.to_json().dump();
    const std::size_t h = std::hash<std::string>{}(canon);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016zx", h);
    return buf;
}

double loglog_slope(const std::vector<double>& values, const std::vector<double>& errors) {
    if (values.size() != errors.size() || values.size() < 2)
        throw InvalidInput("loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(errors[i] > 0.0) || !(values[i] > 0.0)) continue;
        const double x = std::log(values[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw InvalidInput("loglog_slope: fewer than two positive points");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace porecap
