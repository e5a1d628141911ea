#pragma once

// Surface potential induced by a single flux-basis function on its own pore,
// as a radial profile times the angular factor of the mode:
//   plane:  p_mj(xi) = (1/2pi) int_0^{pi/2} sin(s)^m H_j(xi/(alpha sin s)) ds
//   sphere: p_mj(xi) = alpha int_0^{pi/2} sin(s)^{m+1} H_j(alpha sin s, xi) ds
// For xi < alpha the integrand has a logarithmic singularity at
// s* = asin(xi/alpha) and the interval is split there. Profiles are smooth in
// xi except for a half-power edge layer at xi = alpha, which the table
// resolves with sqrt-graded segments on both sides.

#include <memory>
#include <vector>

#include "porecap/basis.hpp"
#include "porecap/geometry.hpp"
#include "porecap/kernels.hpp"

namespace porecap {

// Direct (definition-level) evaluations; a kernel table accelerates the inner
// moment lookups when provided.
double induced_potential_planar(int m, int j, double xi, double alpha,
                                const KernelTable* table = nullptr, double abs_tol = 1e-13,
                                double rel_tol = 1e-10);
double induced_potential_sphere(int m, int j, double xi, double alpha,
                                const KernelTable* table = nullptr, double abs_tol = 1e-12,
                                double rel_tol = 1e-10);

struct PotentialTableParams {
    double xi_max = 0.0;      // query range; 0 = automatic (sphere always uses 2)
    int inside_nodes = 256;   // uniform xi grid on [0, 0.875 alpha]
    int edge_in_nodes = 128;  // sqrt(alpha - xi) grid on [0.875 alpha, alpha]
    int edge_out_nodes = 160; // sqrt(xi - alpha) grid on [alpha, 1.5 alpha]
    int far_nodes = 256;      // log xi grid beyond 1.5 alpha
};

// Radial profile of one (m, |j|) mode, tabulated on edge-resolving segments.
// The far segment is parameterized in log(xi) on the plane and in the polar
// angle 2 asin(xi/2) on the sphere, where the profile stays analytic up to
// the antipode.
class RadialProfile {
public:
    double operator()(double xi) const;

    std::vector<double> node_xi;  // all segment nodes (build order)
    std::vector<double> node_value;

    void finalize(const Surface& surface, double alpha, double xi_max,
                  const PotentialTableParams& params);

private:
    bool sphere_ = false;
    double alpha_ = 0.0, xi_max_ = 0.0, split_in_ = 0.0, split_out_ = 0.0;
    LocalQuintic inside_;    // vs xi
    LocalQuintic edge_in_;   // vs sqrt(alpha - xi)
    LocalQuintic edge_out_;  // vs sqrt(xi - alpha)
    LocalQuintic far_;       // vs log(xi) (plane) or 2 asin(xi/2) (sphere)
};

class PotentialTable {
public:
    static PotentialTable build(const Surface& surface, double alpha, int truncation_degree,
                                const KernelTable& kernels, const PotentialTableParams& params = {});

    const Surface& surface() const { return surface_; }
    double alpha() const { return alpha_; }
    int truncation_degree() const { return degree_; }
    double xi_max() const { return xi_max_; }

    // Interpolated radial factor for mode (m, |j|).
    double radial(int m, int j_abs, double xi) const;

    // Full potential of the mode at polar coordinates about the source pore.
    double eval(ModeIndex mode, double xi, double t) const;

private:
    std::size_t profile_index(int m, int j_abs) const;

    Surface surface_;
    double alpha_ = 0.0;
    int degree_ = 0;
    double xi_max_ = 0.0;
    std::vector<RadialProfile> profiles_;  // indexed by (m, |j|), j parity of m
};

}  // namespace porecap
