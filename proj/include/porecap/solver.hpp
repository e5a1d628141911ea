#pragma once

// Galerkin solve of the pore integral equation: expand the unknown surface
// flux in the edge-singular basis, project the induced potential onto the
// Zernike basis on every pore, and solve the dense linear system for the
// flux coefficients. Total flux and capacitance follow from the axisymmetric
// coefficients, C = J/(2 pi D) on the plane and C = J/(4 pi D) on the sphere.

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "porecap/geometry.hpp"
#include "porecap/kernels.hpp"
#include "porecap/potential.hpp"

namespace porecap {

struct SpectralParams {
    int truncation_degree = 10;  // M
    int angular_nodes = 0;       // collocation angles; 0 = max(64, 8M)
    int radial_nodes = 40;       // collocation radii nominal count, multiple of 10
    double quad_abs_tol = 1e-13;
    double quad_rel_tol = 1e-10;
    KernelTableParams kernel_params;
    PotentialTableParams potential_params;
    std::filesystem::path cache_dir;  // empty = default_cache_dir()
    int residual_check_radii = 3;
    int residual_check_angles = 4;

    int effective_angular_nodes() const;
    void validate() const;
};

struct FluxSolution {
    std::vector<double> coefficients;  // pore-major, then (m asc, j asc) mode order
    std::vector<double> pore_flux;
    double total_flux = 0.0;
    double capacitance = 0.0;
    double residual_max = 0.0;       // max |p - 1| over interior check points
    double solve_residual = 0.0;     // ||A b - c||_inf / ||c||_inf
    double condition_estimate = 0.0; // 1 / rcond of the assembled system
    int truncation_degree = 0;
    double seconds_tables = 0.0;
    double seconds_assembly = 0.0;
    double seconds_solve = 0.0;
};

// Zernike coefficients of the boundary data p = 1 on every pore: sqrt(pi) in
// the (0,0) slot per pore. Requires a common pore radius.
std::vector<double> project_boundary_data(const PoreConfiguration& config, int truncation_degree);

// Dense Galerkin matrix of size N (M+1)(M+2)/2. Self-pore blocks couple only
// equal angular indices and use 1D radial quadrature; cross-pore blocks use
// polar collocation (uniform angles, radii uniform in xi^2 weighted by a
// composite 10-point Newton-Cotes rule).
Eigen::MatrixXd assemble_matrix(const PoreConfiguration& config, const SpectralParams& params,
                                const KernelTable& kernels, const PotentialTable& potentials);

// Direct dense solve with partial pivoting plus one step of iterative
// refinement; reports a condition estimate and the final residual.
std::vector<double> solve_coefficients(const Eigen::MatrixXd& A, const std::vector<double>& c,
                                       double* condition_estimate = nullptr,
                                       double* residual = nullptr);

// Per-pore and total fluxes from the axisymmetric coefficients.
FluxSolution compute_flux(const std::vector<double>& coefficients,
                          const PoreConfiguration& config);

// Full pipeline: tables -> projection -> assembly -> solve -> fluxes,
// including the interior-potential residual diagnostic.
FluxSolution solve(const PoreConfiguration& config, const SpectralParams& params);

// Same pipeline with caller-provided tables (the tables may cover a higher
// degree than params.truncation_degree; sweeps over M reuse one build).
FluxSolution solve_with_tables(const PoreConfiguration& config, const SpectralParams& params,
                               const KernelTable& kernels, const PotentialTable& potentials);

// Reconstructed surface potential at a surface point from a solved
// coefficient vector (sum of all pore contributions).
double reconstruct_potential(const PoreConfiguration& config, const SpectralParams& params,
                             const PotentialTable& potentials,
                             const std::vector<double>& coefficients, const Vec3& point);

}  // namespace porecap
