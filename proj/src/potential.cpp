#include "porecap/potential.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "porecap/errors.hpp"
#include "porecap/quadrature.hpp"

namespace porecap {

namespace {

// Planar moment evaluator shared by the direct paths.
double h_planar_any(int j, double beta, const KernelTable* table) {
    if (table) return table->h_planar_tab(j, beta);
    return h_planar(j, beta);
}

// Largest double below 1; quadrature nodes that land on the singular ray by
// round-off are nudged here instead of raising SingularInput.
const double kBelowOne = std::nextafter(1.0, 0.0);

// T1 + T2 components of the spherical moment (everything except the smooth
// log(2+d) part), via the factoring d^2 = A - B cos tau.
double h_sphere_t12(int j, double eta, double xi, const KernelTable* table) {
    const SphereChord p = sphere_chord_params(eta, xi);
    if (p.B == 0.0) {
        if (j != 0) return 0.0;
        return 1.0 / std::sqrt(p.A) + 0.25 * std::log(p.A);
    }
    const double dmin = std::sqrt(std::max(0.0, p.A - p.B));
    const double dmax = std::sqrt(p.A + p.B);
    const double c = 0.5 * (p.A + dmin * dmax);
    const double beta = std::min(kBelowOne, p.B / (2.0 * c));
    const double t1 = h_planar_any(j, beta, table) / (2.0 * M_PI * std::sqrt(c));
    const double t2 = (j == 0) ? 0.25 * std::log(c) : -std::pow(beta, j) / (4.0 * j);
    return t1 + t2;
}

}  // namespace

double induced_potential_planar(int m, int j, double xi, double alpha, const KernelTable* table,
                                double abs_tol, double rel_tol) {
    if (m < 0 || j < 0 || j > m || (m - j) % 2 != 0)
        throw InvalidInput("induced_potential_planar: invalid mode");
    if (!(alpha > 0.0) || !(xi >= 0.0)) throw DomainError("induced_potential_planar: bad xi/alpha");

    auto integrand = [&](double s) {
        const double sins = std::sin(s);
        const double eta = alpha * sins;
        const double w = std::pow(sins, m);
        if (xi == 0.0) return (j == 0) ? w * 2.0 * M_PI : 0.0;
        double beta = xi / eta;
        if (beta == 1.0) beta = kBelowOne;  // round-off collision with the split point
        return w * h_planar_any(j, beta, table);
    };

    double value;
    if (xi < alpha && xi > 0.0) {
        const double s_star = std::asin(xi / alpha);
        value = singular_quad(integrand, 0.0, s_star, {false, true}, abs_tol, rel_tol) +
                singular_quad(integrand, s_star, M_PI / 2.0, {true, false}, abs_tol, rel_tol);
    } else if (xi == alpha) {
        value = singular_quad(integrand, 0.0, M_PI / 2.0, {false, true}, abs_tol, rel_tol);
    } else {
        value = singular_quad(integrand, 0.0, M_PI / 2.0, {false, false}, abs_tol, rel_tol);
    }
    return value / (2.0 * M_PI);
}

// --- fixed graded quadrature grids ---------------------------------------------

namespace {

struct FixedGrid {
    std::vector<double> x;
    std::vector<double> w;
};

// Composite Gauss panels on [a, b], geometrically graded toward one end down
// to floor_frac*(b-a); the last panel touches the graded end (nodes stay
// interior, so integrable endpoint singularities are admissible).
FixedGrid graded_gauss(double a, double b, bool toward_right, double floor_frac, int per_panel) {
    FixedGrid grid;
    const GaussRule& rule = gauss_legendre(per_panel);
    const double width = b - a;
    std::vector<double> cuts;  // distances from the graded end, decreasing
    cuts.push_back(width);
    for (double f = 0.5; f > floor_frac; f *= 0.5) cuts.push_back(width * f);
    cuts.push_back(0.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo, hi;
        if (toward_right) {
            lo = b - cuts[i];
            hi = b - cuts[i + 1];
        } else {
            lo = a + cuts[i + 1];
            hi = a + cuts[i];
        }
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int q = 0; q < per_panel; ++q) {
            grid.x.push_back(mid + half * rule.nodes[q]);
            grid.w.push_back(half * rule.weights[q]);
        }
    }
    return grid;
}

FixedGrid single_gauss(double a, double b, int n) {
    FixedGrid grid;
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < n; ++q) {
        grid.x.push_back(mid + half * rule.nodes[q]);
        grid.w.push_back(half * rule.weights[q]);
    }
    return grid;
}

// s-grid for the radial moment integrals at a given xi: split at
// s* = asin(xi/alpha) when the target radius lies inside the pore, otherwise
// graded toward s = pi/2 where the kernel argument is closest to singular.
FixedGrid make_s_grid(double xi, double alpha, double floor_frac, int per_panel) {
    FixedGrid grid;
    if (xi > 0.0 && xi < alpha) {
        const double s_star = std::asin(xi / alpha);
        FixedGrid left = graded_gauss(0.0, s_star, true, floor_frac, per_panel);
        FixedGrid right = graded_gauss(s_star, M_PI / 2.0, false, floor_frac, per_panel);
        grid.x = std::move(left.x);
        grid.w = std::move(left.w);
        grid.x.insert(grid.x.end(), right.x.begin(), right.x.end());
        grid.w.insert(grid.w.end(), right.w.begin(), right.w.end());
    } else if (xi == 0.0) {
        grid = graded_gauss(0.0, M_PI / 2.0, false, floor_frac, per_panel);
    } else {
        grid = graded_gauss(0.0, M_PI / 2.0, true, floor_frac, per_panel);
    }
    return grid;
}

// Smooth log(2+d) contribution to the spherical radial factor (including the
// leading alpha), by the order-swapped fixed-grid product quadrature shared
// with the table build.
double sphere_smooth_radial(int m, int j, double xi, double alpha) {
    const FixedGrid s_grid = make_s_grid(xi, alpha, 1e-12, 16);
    const FixedGrid tau_grid = graded_gauss(0.0, M_PI, false, 1e-10, 12);
    const std::size_t ns = s_grid.x.size();
    std::vector<double> pA(ns), pB(ns), wpow(ns);
    for (std::size_t q = 0; q < ns; ++q) {
        const double sins = std::sin(s_grid.x[q]);
        const SphereChord p = sphere_chord_params(alpha * sins, xi);
        pA[q] = p.A;
        pB[q] = p.B;
        wpow[q] = s_grid.w[q] * std::pow(sins, m + 1);
    }
    double acc = 0.0;
    for (std::size_t ti = 0; ti < tau_grid.x.size(); ++ti) {
        const double costau = std::cos(tau_grid.x[ti]);
        double inner = 0.0;
        for (std::size_t q = 0; q < ns; ++q) {
            const double d2 = std::max(0.0, pA[q] - pB[q] * costau);
            inner += wpow[q] * std::log(2.0 + std::sqrt(d2));
        }
        acc += tau_grid.w[ti] * std::cos(j * tau_grid.x[ti]) * inner;
    }
    return -(alpha / (2.0 * M_PI)) * acc;
}

}  // namespace

double induced_potential_sphere(int m, int j, double xi, double alpha, const KernelTable* table,
                                double abs_tol, double rel_tol) {
    if (m < 0 || j < 0 || j > m || (m - j) % 2 != 0)
        throw InvalidInput("induced_potential_sphere: invalid mode");
    if (!(alpha > 0.0) || alpha >= 2.0 || !(xi >= 0.0) || xi > 2.0)
        throw DomainError("induced_potential_sphere: bad xi/alpha");

    // Singular (1/d and log d) parts of the moment, integrated with the split.
    auto integrand12 = [&](double s) {
        const double sins = std::sin(s);
        return std::pow(sins, m + 1) * h_sphere_t12(j, alpha * sins, xi, table);
    };
    double p12;
    if (xi < alpha && xi > 0.0) {
        const double s_star = std::asin(xi / alpha);
        p12 = singular_quad(integrand12, 0.0, s_star, {false, true}, abs_tol, rel_tol) +
              singular_quad(integrand12, s_star, M_PI / 2.0, {true, false}, abs_tol, rel_tol);
    } else {
        // xi = 0 has a log endpoint from the log(d) term; xi = alpha from 1/d.
        const EndpointFlags flags{xi == 0.0, xi == alpha};
        p12 = singular_quad(integrand12, 0.0, M_PI / 2.0, flags, abs_tol, rel_tol);
    }

    return alpha * p12 + sphere_smooth_radial(m, j, xi, alpha);
}

// --- RadialProfile ------------------------------------------------------------

void RadialProfile::finalize(const Surface& surface, double alpha, double xi_max,
                             const PotentialTableParams& params) {
    sphere_ = surface.kind == SurfaceKind::UnitSphere;
    alpha_ = alpha;
    xi_max_ = xi_max;
    split_in_ = 0.875 * alpha;
    split_out_ = sphere_ ? std::min(alpha + 0.5 * std::min(alpha, 2.0 - alpha), xi_max)
                         : std::min(1.5 * alpha, xi_max);

    // node_xi was filled segment by segment in build(); re-slice it here.
    std::size_t pos = 0;
    auto take = [&](std::size_t n) {
        std::vector<double> xs(node_xi.begin() + pos, node_xi.begin() + pos + n);
        std::vector<double> ys(node_value.begin() + pos, node_value.begin() + pos + n);
        pos += n;
        return std::pair(std::move(xs), std::move(ys));
    };

    auto [xi_in, val_in] = take(params.inside_nodes);
    inside_ = LocalQuintic(std::move(xi_in), std::move(val_in));

    auto [xi_ei, val_ei] = take(params.edge_in_nodes);
    std::vector<double> sig_ei(xi_ei.size());
    for (std::size_t i = 0; i < xi_ei.size(); ++i)
        sig_ei[i] = std::sqrt(std::max(0.0, alpha_ - xi_ei[i]));
    std::reverse(sig_ei.begin(), sig_ei.end());
    std::reverse(val_ei.begin(), val_ei.end());
    edge_in_ = LocalQuintic(std::move(sig_ei), std::move(val_ei));

    auto [xi_eo, val_eo] = take(params.edge_out_nodes);
    std::vector<double> sig_eo(xi_eo.size());
    for (std::size_t i = 0; i < xi_eo.size(); ++i)
        sig_eo[i] = std::sqrt(std::max(0.0, xi_eo[i] - alpha_));
    edge_out_ = LocalQuintic(std::move(sig_eo), std::move(val_eo));

    if (pos < node_xi.size()) {
        auto [xi_far, val_far] = take(node_xi.size() - pos);
        std::vector<double> coord(xi_far.size());
        for (std::size_t i = 0; i < xi_far.size(); ++i)
            coord[i] = sphere_ ? 2.0 * std::asin(std::min(1.0, 0.5 * xi_far[i]))
                               : std::log(xi_far[i]);
        far_ = LocalQuintic(std::move(coord), std::move(val_far));
    }
}

double RadialProfile::operator()(double xi) const {
    if (!(xi >= 0.0)) throw DomainError("RadialProfile: xi must be >= 0");
    if (xi > xi_max_ * (1.0 + 1e-12))
        throw DomainError("RadialProfile: xi beyond tabulated range");
    if (xi <= split_in_) return inside_(xi);
    if (xi <= alpha_) return edge_in_(std::sqrt(alpha_ - xi));
    if (xi <= split_out_ || far_.empty())
        return edge_out_(std::sqrt(std::min(xi, split_out_) - alpha_));
    if (sphere_) return far_(2.0 * std::asin(std::min(1.0, 0.5 * xi)));
    return far_(std::log(std::min(xi, xi_max_)));
}

// --- PotentialTable -----------------------------------------------------------

std::size_t PotentialTable::profile_index(int m, int j_abs) const {
    if (m < 0 || m > degree_ || j_abs < 0 || j_abs > m || (m - j_abs) % 2 != 0)
        throw InvalidInput("potential table: invalid mode");
    // modes (m, |j|) with matching parity, ordered m-major.
    std::size_t idx = 0;
    for (int mm = 0; mm < m; ++mm) idx += static_cast<std::size_t>(mm / 2) + 1;
    return idx + static_cast<std::size_t>(j_abs / 2);
}

double PotentialTable::radial(int m, int j_abs, double xi) const {
    return profiles_[profile_index(m, j_abs)](xi);
}

double PotentialTable::eval(ModeIndex mode, double xi, double t) const {
    return radial(mode.m, std::abs(mode.j), xi) * angular_factor(mode.j, t);
}

PotentialTable PotentialTable::build(const Surface& surface, double alpha, int truncation_degree,
                                     const KernelTable& kernels,
                                     const PotentialTableParams& params) {
    if (!(alpha > 0.0)) throw InvalidInput("potential table: alpha must be positive");
    if (truncation_degree < 0) throw InvalidInput("potential table: negative degree");
    if (kernels.max_j() < truncation_degree)
        throw InvalidInput("potential table: kernel table does not cover the requested degree");
    const bool sphere = surface.kind == SurfaceKind::UnitSphere;
    if (sphere && !(alpha < 2.0)) throw InvalidInput("potential table: sphere radius must be < 2");

    if (params.inside_nodes < 48 || params.edge_in_nodes < 24 || params.edge_out_nodes < 32 ||
        params.far_nodes < 48)
        throw InvalidInput("potential table: resolution too coarse for the accuracy target");

    PotentialTable table;
    table.surface_ = surface;
    table.alpha_ = alpha;
    table.degree_ = truncation_degree;
    table.xi_max_ = sphere ? 2.0 : (params.xi_max > 0.0 ? params.xi_max : 8.0 * alpha);
    if (table.xi_max_ < 2.0 * alpha && !sphere)
        throw InvalidInput("potential table: xi_max must cover at least 2 alpha");

    // Node layout shared by every profile.
    std::vector<double> nodes;
    const double split_in = 0.875 * alpha;
    for (int i = 0; i < params.inside_nodes; ++i)
        nodes.push_back(split_in * i / (params.inside_nodes - 1));
    {
        const double smax = std::sqrt(alpha - split_in);
        for (int i = 0; i < params.edge_in_nodes; ++i) {
            const double sig = smax * (params.edge_in_nodes - 1 - i) / (params.edge_in_nodes - 1);
            nodes.push_back(alpha - sig * sig);
        }
    }
    const double split_out = sphere
                                 ? std::min(alpha + 0.5 * std::min(alpha, 2.0 - alpha),
                                            table.xi_max_)
                                 : std::min(1.5 * alpha, table.xi_max_);
    {
        const double smax = std::sqrt(split_out - alpha);
        for (int i = 0; i < params.edge_out_nodes; ++i) {
            const double sig = smax * i / (params.edge_out_nodes - 1);
            nodes.push_back(alpha + sig * sig);
        }
    }
    if (split_out < table.xi_max_) {
        if (sphere) {
            const double b0 = 2.0 * std::asin(0.5 * split_out);
            for (int i = 1; i <= params.far_nodes; ++i) {
                const double b = b0 + (M_PI - b0) * i / params.far_nodes;
                nodes.push_back(i == params.far_nodes ? 2.0 : 2.0 * std::sin(0.5 * b));
            }
        } else {
            const double l0 = std::log(split_out), l1 = std::log(table.xi_max_);
            for (int i = 1; i <= params.far_nodes; ++i) {
                double v = std::exp(l0 + (l1 - l0) * i / params.far_nodes);
                if (i == params.far_nodes || v > table.xi_max_) v = table.xi_max_;
                nodes.push_back(v);
            }
        }
    }

    const int M = truncation_degree;
    std::size_t n_profiles = 0;
    for (int m = 0; m <= M; ++m) n_profiles += static_cast<std::size_t>(m / 2) + 1;
    table.profiles_.resize(n_profiles);
    for (auto& prof : table.profiles_) {
        prof.node_xi = nodes;
        prof.node_value.assign(nodes.size(), 0.0);
    }

    // tau grid for the order-swapped log(2+d) integral (sphere only): graded
    // toward the kink at tau = 0.
    FixedGrid tau_grid;
    if (sphere) tau_grid = graded_gauss(0.0, M_PI, false, 1e-10, 12);

    const double below_one = std::nextafter(1.0, 0.0);
    const std::ptrdiff_t n_nodes = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t node = 0; node < n_nodes; ++node) {
        const double xi = nodes[node];
        const FixedGrid s_grid = make_s_grid(xi, alpha, 1e-15, 16);
        const std::size_t ns = s_grid.x.size();
        const std::size_t np = static_cast<std::size_t>(M) + 2;
        std::vector<double> sins(ns), kvals(ns), powtab(ns * np);
        for (std::size_t q = 0; q < ns; ++q) {
            sins[q] = std::sin(s_grid.x[q]);
            double p = 1.0;
            for (std::size_t k = 0; k < np; ++k) {
                powtab[q * np + k] = p;
                p *= sins[q];
            }
        }

        // Chord parameters are j-independent; precompute for the sphere.
        std::vector<double> pA(ns), pB(ns);
        if (sphere)
            for (std::size_t q = 0; q < ns; ++q) {
                const SphereChord p = sphere_chord_params(alpha * sins[q], xi);
                pA[q] = p.A;
                pB[q] = p.B;
            }

        for (int jabs = 0; jabs <= M; ++jabs) {
            // Kernel values along the s grid, shared across all m of this j.
            if (!sphere) {
                for (std::size_t q = 0; q < ns; ++q) {
                    if (xi == 0.0) {
                        kvals[q] = (jabs == 0) ? 2.0 * M_PI : 0.0;
                        continue;
                    }
                    double beta = xi / (alpha * sins[q]);
                    if (beta == 1.0) beta = below_one;
                    kvals[q] = kernels.h_planar_tab(jabs, beta);
                }
            } else {
                for (std::size_t q = 0; q < ns; ++q) {
                    const double A = pA[q], B = pB[q];
                    if (B == 0.0) {
                        kvals[q] = (jabs == 0) ? 1.0 / std::sqrt(A) + 0.25 * std::log(A) : 0.0;
                        continue;
                    }
                    const double dmin = std::sqrt(std::max(0.0, A - B));
                    const double c = 0.5 * (A + dmin * std::sqrt(A + B));
                    const double beta = std::min(below_one, B / (2.0 * c));
                    const double t1 =
                        (kernels.h_planar_bounded_tab(jabs, beta) + elliptic_ring_integral(beta)) /
                        (2.0 * M_PI * std::sqrt(c));
                    const double t2 =
                        (jabs == 0) ? 0.25 * std::log(c) : -std::pow(beta, jabs) / (4.0 * jabs);
                    kvals[q] = t1 + t2;
                }
            }

            for (int m = jabs; m <= M; m += 2) {
                const std::size_t pw = static_cast<std::size_t>(sphere ? m + 1 : m);
                double acc = 0.0;
                for (std::size_t q = 0; q < ns; ++q)
                    acc += s_grid.w[q] * powtab[q * np + pw] * kvals[q];
                const double value = sphere ? alpha * acc : acc / (2.0 * M_PI);
                table.profiles_[table.profile_index(m, jabs)].node_value[node] += value;
            }
        }

        if (sphere) {
            // Smooth log(2+d) contribution, order-swapped: for each tau node
            // accumulate the s-moments of log(2+d) for every power at once.
            const std::size_t nt = tau_grid.x.size();
            std::vector<double> smom(np, 0.0);
            std::vector<double> acc_mj(static_cast<std::size_t>(M + 1) * (M + 1), 0.0);
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const double tau = tau_grid.x[ti];
                const double costau = std::cos(tau);
                std::fill(smom.begin(), smom.end(), 0.0);
                for (std::size_t q = 0; q < ns; ++q) {
                    const double d2 = std::max(0.0, pA[q] - pB[q] * costau);
                    const double wl = s_grid.w[q] * std::log(2.0 + std::sqrt(d2)) * sins[q];
                    const double* pt = &powtab[q * np];
                    for (int m = 0; m <= M; ++m) smom[m] += wl * pt[m];
                }
                for (int jabs = 0; jabs <= M; ++jabs) {
                    const double wj = tau_grid.w[ti] * std::cos(jabs * tau);
                    for (int m = jabs; m <= M; m += 2)
                        acc_mj[static_cast<std::size_t>(jabs) * (M + 1) + m] += wj * smom[m];
                }
            }
            for (int jabs = 0; jabs <= M; ++jabs)
                for (int m = jabs; m <= M; m += 2) {
                    const double p3 = -(alpha / (2.0 * M_PI)) *
                                      acc_mj[static_cast<std::size_t>(jabs) * (M + 1) + m];
                    table.profiles_[table.profile_index(m, jabs)].node_value[node] += p3;
                }
        }
    }

    for (auto& prof : table.profiles_) prof.finalize(surface, alpha, table.xi_max_, params);
    return table;
}

}  // namespace porecap
