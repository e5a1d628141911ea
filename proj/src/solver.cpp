#include "porecap/solver.hpp"

#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "porecap/basis.hpp"
#include "porecap/errors.hpp"
#include "porecap/quadrature.hpp"

namespace porecap {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Closed 10-point Newton-Cotes weights over one panel, in units of the panel
// width (sum = 1).
constexpr double kNewtonCotes10[10] = {
    2857.0 / 89600.0, 15741.0 / 89600.0, 1080.0 / 89600.0,  19344.0 / 89600.0, 5778.0 / 89600.0,
    5778.0 / 89600.0, 19344.0 / 89600.0, 1080.0 / 89600.0,  15741.0 / 89600.0, 2857.0 / 89600.0};

struct CollocationGrid {
    std::vector<double> xi;      // radial coordinate of each distinct radius
    std::vector<double> w_rad;   // merged radial weights (integration in u = xi^2)
    std::vector<double> t;       // angles
    double w_ang = 0.0;          // uniform angular weight
};

CollocationGrid make_collocation(double alpha, int n_angles, int n_radial_nominal) {
    CollocationGrid grid;
    const int panels = n_radial_nominal / 10;
    const int n_rad = 9 * panels + 1;
    grid.xi.assign(n_rad, 0.0);
    grid.w_rad.assign(n_rad, 0.0);
    const double u_max = alpha * alpha;
    const double panel_width = u_max / panels;
    for (int p = 0; p < panels; ++p) {
        for (int q = 0; q < 10; ++q) {
            const int idx = 9 * p + q;
            const double u = panel_width * (p + q / 9.0);
            grid.xi[idx] = std::sqrt(u);
            grid.w_rad[idx] += panel_width * kNewtonCotes10[q];
        }
    }
    grid.t.resize(n_angles);
    for (int i = 0; i < n_angles; ++i) grid.t[i] = 2.0 * M_PI * i / n_angles;
    grid.w_ang = 2.0 * M_PI / n_angles;
    return grid;
}

// Local azimuth of a surface point about a pore, measured in its tangent frame.
double local_azimuth(const Vec3& point, const Pore& pore, const TangentFrame& frame) {
    const Vec3 v = point - pore.center;
    return std::atan2(v.dot(frame.e2), v.dot(frame.e1));
}

Vec3 collocation_point(const Pore& pore, const TangentFrame& frame, const Surface& surface,
                       double xi, double t) {
    const Vec3 dir = frame.e1 * std::cos(t) + frame.e2 * std::sin(t);
    if (surface.kind == SurfaceKind::Plane) return pore.center + dir * xi;
    const double theta = 2.0 * std::asin(std::min(1.0, 0.5 * xi));
    return pore.center * std::cos(theta) + dir * std::sin(theta);
}

}  // namespace

int SpectralParams::effective_angular_nodes() const {
    if (angular_nodes > 0) return angular_nodes;
    return std::max(64, 8 * truncation_degree);
}

void SpectralParams::validate() const {
    if (truncation_degree < 0) throw InvalidInput("truncation degree must be >= 0");
    if (truncation_degree > 40) throw InvalidInput("truncation degree above supported maximum");
    const int nt = effective_angular_nodes();
    if (nt < 4 * truncation_degree + 8)
        throw InvalidInput("angular collocation count must be at least 4M + 8");
    if (radial_nodes < 10 || radial_nodes % 10 != 0)
        throw InvalidInput("radial collocation count must be a positive multiple of 10");
}

std::vector<double> project_boundary_data(const PoreConfiguration& config,
                                          int truncation_degree) {
    double alpha = 0.0;
    if (!config.common_radius(&alpha))
        throw UnsupportedConfiguration("solver requires a common pore radius");
    const std::size_t nm = mode_count(truncation_degree);
    std::vector<double> c(config.pores.size() * nm, 0.0);
    for (std::size_t k = 0; k < config.pores.size(); ++k) c[k * nm] = std::sqrt(M_PI);
    return c;
}

Eigen::MatrixXd assemble_matrix(const PoreConfiguration& config, const SpectralParams& params,
                                const KernelTable& kernels, const PotentialTable& potentials) {
    params.validate();
    config.validate_basic();
    double alpha = 0.0;
    if (!config.common_radius(&alpha))
        throw UnsupportedConfiguration("solver requires a common pore radius");
    const int M = params.truncation_degree;
    if (kernels.max_j() < M || potentials.truncation_degree() < M)
        throw InvalidInput("assemble_matrix: tables do not cover the truncation degree");

    const auto modes = enumerate_modes(M);
    const std::size_t nm = modes.size();
    const std::size_t n_pores = config.pores.size();
    const std::size_t size = n_pores * nm;

    // Self-pore block, identical for every pore: nonzero only for equal
    // angular index; radial part integrates the tabulated profile against the
    // Zernike radial polynomial (weak edge singularity at xi = alpha).
    Eigen::MatrixXd self_block = Eigen::MatrixXd::Zero(nm, nm);
    {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t r = 0; r < nm; ++r)
            for (std::size_t c = 0; c < nm; ++c)
                if (modes[r].j == modes[c].j) pairs.emplace_back(r, c);
        const std::ptrdiff_t n_pairs = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n_pairs; ++i) {
            const auto [r, c] = pairs[static_cast<std::size_t>(i)];
            const int jabs = std::abs(modes[r].j);
            const int m_row = modes[r].m;
            const int m_col = modes[c].m;
            auto integrand = [&](double xi) {
                return zernike_radial(m_row, jabs, xi / alpha) *
                       potentials.radial(m_col, jabs, xi) * xi;
            };
            const double radial = singular_quad(integrand, 0.0, alpha, {false, true},
                                                params.quad_abs_tol * alpha * alpha,
                                                params.quad_rel_tol);
            const double ang = (modes[r].j == 0) ? 2.0 * M_PI : M_PI;
            self_block(r, c) = ang * radial / (alpha * alpha);
        }
    }

    Eigen::MatrixXd a_matrix = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t k = 0; k < n_pores; ++k)
        a_matrix.block(k * nm, k * nm, nm, nm) = self_block;

    if (n_pores > 1) {
        const CollocationGrid grid =
            make_collocation(alpha, params.effective_angular_nodes(), params.radial_nodes);
        const std::size_t n_rad = grid.xi.size();
        const std::size_t n_ang = grid.t.size();
        const std::size_t n_pts = n_rad * n_ang;

        // Test functions with quadrature weights baked in; identical for all
        // pores because the grid lives in local polar coordinates.
        Eigen::MatrixXd weighted_test(n_pts, nm);
        for (std::size_t ir = 0; ir < n_rad; ++ir)
            for (std::size_t ia = 0; ia < n_ang; ++ia) {
                const std::size_t pt = ir * n_ang + ia;
                const double w = 0.5 * grid.w_rad[ir] * grid.w_ang;  // dS = du dt / 2
                for (std::size_t mo = 0; mo < nm; ++mo)
                    weighted_test(pt, mo) =
                        w * zernike_eval(modes[mo], grid.xi[ir] / alpha, grid.t[ia]);
            }

        std::vector<TangentFrame> frames(n_pores);
        for (std::size_t k = 0; k < n_pores; ++k)
            frames[k] = tangent_frame(config.pores[k].center, config.surface);

        // Physical collocation points per target pore.
        std::vector<std::vector<Vec3>> points(n_pores, std::vector<Vec3>(n_pts));
        for (std::size_t k = 0; k < n_pores; ++k)
            for (std::size_t ir = 0; ir < n_rad; ++ir)
                for (std::size_t ia = 0; ia < n_ang; ++ia)
                    points[k][ir * n_ang + ia] = collocation_point(
                        config.pores[k], frames[k], config.surface, grid.xi[ir], grid.t[ia]);

        struct BlockTask {
            std::size_t target, source;
        };
        std::vector<BlockTask> tasks;
        tasks.reserve(n_pores * (n_pores - 1));
        for (std::size_t kt = 0; kt < n_pores; ++kt)
            for (std::size_t ks = 0; ks < n_pores; ++ks)
                if (kt != ks) tasks.push_back({kt, ks});

        const int n_profiles_jmax = M;  // |j| range
        (void)n_profiles_jmax;
        const std::ptrdiff_t n_tasks = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel
        {
            Eigen::MatrixXd source_vals(n_pts, nm);
            std::vector<double> radial_cache(static_cast<std::size_t>(M) + 1);
            std::vector<double> cos_j(static_cast<std::size_t>(M) + 1),
                sin_j(static_cast<std::size_t>(M) + 1);
#pragma omp for schedule(dynamic)
            for (std::ptrdiff_t task_i = 0; task_i < n_tasks; ++task_i) {
                const BlockTask task = tasks[static_cast<std::size_t>(task_i)];
                const Pore& src = config.pores[task.source];
                const TangentFrame& src_frame = frames[task.source];
                for (std::size_t pt = 0; pt < n_pts; ++pt) {
                    const Vec3& x = points[task.target][pt];
                    const double xi_src = (x - src.center).norm();
                    const double t_src = local_azimuth(x, src, src_frame);
                    // cos/sin multiples by recurrence.
                    cos_j[0] = 1.0;
                    sin_j[0] = 0.0;
                    if (M >= 1) {
                        cos_j[1] = std::cos(t_src);
                        sin_j[1] = std::sin(t_src);
                        for (int j = 2; j <= M; ++j) {
                            cos_j[j] = 2.0 * cos_j[1] * cos_j[j - 1] - cos_j[j - 2];
                            sin_j[j] = 2.0 * cos_j[1] * sin_j[j - 1] - sin_j[j - 2];
                        }
                    }
                    for (std::size_t mo = 0; mo < nm; ++mo) {
                        const ModeIndex mode = modes[mo];
                        const int jabs = std::abs(mode.j);
                        // Radial profiles depend on (m, |j|) only; cache per m
                        // sweep: modes are m-major so recompute when m changes.
                        if (mo == 0 || modes[mo - 1].m != mode.m) {
                            for (int ja = mode.m % 2; ja <= mode.m; ja += 2)
                                radial_cache[ja] = potentials.radial(mode.m, ja, xi_src);
                        }
                        const double ang = mode.j > 0   ? sin_j[jabs]
                                           : mode.j < 0 ? cos_j[jabs]
                                                        : 1.0;
                        source_vals(pt, mo) = radial_cache[jabs] * ang;
                    }
                }
                Eigen::MatrixXd block = weighted_test.transpose() * source_vals;
                block /= alpha * alpha;
                a_matrix.block(task.target * nm, task.source * nm, nm, nm) = block;
            }
        }
    }
    return a_matrix;
}

std::vector<double> solve_coefficients(const Eigen::MatrixXd& A, const std::vector<double>& c,
                                       double* condition_estimate, double* residual) {
    if (A.rows() != A.cols()) throw InvalidInput("solve_coefficients: matrix must be square");
    if (static_cast<std::size_t>(A.rows()) != c.size())
        throw InvalidInput("solve_coefficients: size mismatch");
    Eigen::Map<const Eigen::VectorXd> rhs(c.data(), static_cast<Eigen::Index>(c.size()));

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (condition_estimate) *condition_estimate = (rcond > 0.0) ? 1.0 / rcond : INFINITY;
    if (!(rcond > 1e-15))
        throw SolverError("linear system numerically singular",
                          (rcond > 0.0) ? 1.0 / rcond : INFINITY);

    Eigen::VectorXd b = lu.solve(rhs);
    b += lu.solve(rhs - A * b);  // one step of iterative refinement

    const double resid = (A * b - rhs).lpNorm<Eigen::Infinity>() / rhs.lpNorm<Eigen::Infinity>();
    if (residual) *residual = resid;
    if (!(resid < 1e-10))
        throw SolverError("solve residual exceeds 1e-10", (rcond > 0.0) ? 1.0 / rcond : INFINITY);
    return std::vector<double>(b.data(), b.data() + b.size());
}

FluxSolution compute_flux(const std::vector<double>& coefficients,
                          const PoreConfiguration& config) {
    double alpha = 0.0;
    if (!config.common_radius(&alpha))
        throw UnsupportedConfiguration("compute_flux requires a common pore radius");
    const std::size_t n_pores = config.pores.size();
    if (coefficients.size() % n_pores != 0)
        throw InvalidInput("compute_flux: coefficient vector size mismatch");
    const std::size_t nm = coefficients.size() / n_pores;

    // Recover M from the mode count.
    int M = 0;
    while (mode_count(M) < nm) ++M;
    if (mode_count(M) != nm) throw InvalidInput("compute_flux: not a triangular mode count");
    const auto modes = enumerate_modes(M);

    FluxSolution sol;
    sol.truncation_degree = M;
    sol.coefficients = coefficients;
    sol.pore_flux.assign(n_pores, 0.0);
    for (std::size_t k = 0; k < n_pores; ++k) {
        double flux = 0.0;
        for (std::size_t mo = 0; mo < nm; ++mo)
            if (modes[mo].j == 0)
                flux += coefficients[k * nm + mo] * flux_basis_total_flux(modes[mo], alpha);
        sol.pore_flux[k] = config.diffusivity * flux;
        sol.total_flux += sol.pore_flux[k];
    }
    const double denom = (config.surface.kind == SurfaceKind::Plane) ? 2.0 * M_PI : 4.0 * M_PI;
    sol.capacitance = sol.total_flux / (denom * config.diffusivity);
    return sol;
}

double reconstruct_potential(const PoreConfiguration& config, const SpectralParams& params,
                             const PotentialTable& potentials,
                             const std::vector<double>& coefficients, const Vec3& point) {
    const auto modes = enumerate_modes(params.truncation_degree);
    const std::size_t nm = modes.size();
    double p = 0.0;
    for (std::size_t k = 0; k < config.pores.size(); ++k) {
        const Pore& pore = config.pores[k];
        const TangentFrame frame = tangent_frame(pore.center, config.surface);
        const double xi = (point - pore.center).norm();
        const double t = local_azimuth(point, pore, frame);
        for (std::size_t mo = 0; mo < nm; ++mo)
            p += coefficients[k * nm + mo] * potentials.eval(modes[mo], xi, t);
    }
    return p;
}

FluxSolution solve_with_tables(const PoreConfiguration& config, const SpectralParams& params,
                               const KernelTable& kernels, const PotentialTable& potentials) {
    params.validate();
    config.validate_basic();
    const OverlapReport overlap = validate_nonoverlap(config);
    if (!overlap.ok()) throw InvalidInput("configuration has overlapping pores");

    const auto t_assembly = Clock::now();
    const Eigen::MatrixXd a_matrix = assemble_matrix(config, params, kernels, potentials);
    const std::vector<double> c = project_boundary_data(config, params.truncation_degree);
    const double assembly_s = seconds_since(t_assembly);

    const auto t_solve = Clock::now();
    double cond = 0.0, resid = 0.0;
    const std::vector<double> b = solve_coefficients(a_matrix, c, &cond, &resid);
    const double solve_s = seconds_since(t_solve);

    FluxSolution sol = compute_flux(b, config);
    sol.condition_estimate = cond;
    sol.solve_residual = resid;
    sol.seconds_assembly = assembly_s;
    sol.seconds_solve = solve_s;

    // Interior residual |p - 1| at a few radii/angles per pore.
    double alpha = 0.0;
    config.common_radius(&alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < config.pores.size(); ++k) {
        const Pore& pore = config.pores[k];
        const TangentFrame frame = tangent_frame(pore.center, config.surface);
        for (int ir = 0; ir < params.residual_check_radii; ++ir) {
            const double xi =
                alpha * (params.residual_check_radii == 1
                             ? 0.0
                             : 0.9 * ir / (params.residual_check_radii - 1));
            for (int ia = 0; ia < params.residual_check_angles; ++ia) {
                const double t = 2.0 * M_PI * ia / params.residual_check_angles + 0.37;
                const Vec3 x = collocation_point(pore, frame, config.surface, xi, t);
                const double p = reconstruct_potential(config, params, potentials, b, x);
                worst = std::max(worst, std::abs(p - 1.0));
            }
        }
    }
    sol.residual_max = worst;
    return sol;
}

FluxSolution solve(const PoreConfiguration& config, const SpectralParams& params) {
    params.validate();
    config.validate_basic();
    double alpha = 0.0;
    if (!config.common_radius(&alpha))
        throw UnsupportedConfiguration("solver requires a common pore radius");

    const auto t_tables = Clock::now();
    const auto cache_dir = params.cache_dir.empty() ? default_cache_dir() : params.cache_dir;
    const KernelTable kernels = KernelTable::cached(config.surface, params.truncation_degree,
                                                    params.kernel_params, cache_dir);

    PotentialTableParams pot_params = params.potential_params;
    if (config.surface.kind == SurfaceKind::Plane && pot_params.xi_max <= 0.0) {
        double max_dist = 0.0;
        for (std::size_t i = 0; i < config.pores.size(); ++i)
            for (std::size_t j = i + 1; j < config.pores.size(); ++j)
                max_dist = std::max(
                    max_dist, (config.pores[i].center - config.pores[j].center).norm());
        pot_params.xi_max = std::max(8.0 * alpha, max_dist + 2.0 * alpha);
    }
    const PotentialTable potentials = PotentialTable::build(
        config.surface, alpha, params.truncation_degree, kernels, pot_params);
    const double tables_s = seconds_since(t_tables);

    FluxSolution sol = solve_with_tables(config, params, kernels, potentials);
    sol.seconds_tables = tables_s;
    return sol;
}

}  // namespace porecap
