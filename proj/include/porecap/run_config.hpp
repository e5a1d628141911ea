#pragma once

// JSON run configuration and result records for the command-line front end.
// A configuration holds either an explicit pore list or a generator spec,
// plus diffusivity, spectral parameters, and an optional comparison target.
// Parsing round-trips losslessly (parse -> serialize -> parse is identity).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "porecap/formulas.hpp"
#include "porecap/geometry.hpp"
#include "porecap/solver.hpp"

namespace porecap {

struct GeneratorSpec {
    std::string kind;            // fibonacci | platonic | square | ring
    int k = 0;                   // fibonacci
    std::string solid;           // platonic
    int count = 0;               // ring
    double scale = 0.0;          // square / ring
    double radius = 0.0;         // common pore radius

    bool operator==(const GeneratorSpec&) const = default;
};

struct RunConfig {
    std::string surface = "plane";  // plane | sphere
    std::vector<Pore> pores;        // explicit list, exclusive with generator
    std::optional<GeneratorSpec> generator;
    double diffusivity = 1.0;
    int modes = 10;
    int angular_nodes = 0;   // 0 = automatic
    int radial_nodes = 40;
    double quad_abs_tol = 1e-13;
    double quad_rel_tol = 1e-10;
    KernelTableParams kernel_params;
    double xi_max = 0.0;
    std::string compare = "none";  // none | asymptotic | series | homogenized
    std::string output;

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static RunConfig load(const std::string& path);

    // Expand the generator (if any) into the concrete pore list.
    PoreConfiguration materialize() const;
    SpectralParams spectral_params() const;

    bool operator==(const RunConfig& other) const;
};

struct ComparisonResult {
    std::string target;
    double value = 0.0;
    double rel_err = 0.0;  // |J_num - J_ref| / J_num
};

struct ResultRecord {
    std::string run_id;
    nlohmann::json config_echo;
    std::string surface;
    int n_pores = 0;
    int modes = 0;
    double flux_total = 0.0;
    double capacitance = 0.0;
    std::vector<double> per_pore_flux;
    std::vector<ComparisonResult> comparisons;
    double residual_max = 0.0;
    double solve_residual = 0.0;
    double condition_estimate = 0.0;
    double seconds_tables = 0.0;
    double seconds_assembly = 0.0;
    double seconds_solve = 0.0;
    double seconds_total = 0.0;

    nlohmann::json to_json() const;
};

// Reference flux for a comparison target; throws InvalidInput for targets
// inapplicable to the configuration.
double reference_flux(const std::string& target, const PoreConfiguration& config);

// Deterministic short identifier from the canonical config serialization.
std::string config_run_id(const RunConfig& config);

// Least-squares slope of log(err) vs log(value), ignoring non-positive errors.
double loglog_slope(const std::vector<double>& values, const std::vector<double>& errors);

std::string format_float(double v);  // 17 significant digits, locale-free

}  // namespace porecap
