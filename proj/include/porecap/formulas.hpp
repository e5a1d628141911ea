#pragma once

// Closed-form and asymptotic reference results: the Berg-Purcell capacitance,
// homogenized leakage laws, multi-pore flux expansions on the plane and the
// unit sphere, the two-disc separation series, the homogenized sphere flux,
// and the exact unit-potential disc solution.

#include <string>
#include <utility>
#include <vector>

#include "porecap/geometry.hpp"

namespace porecap {

// A formula value together with its per-order term breakdown; value is the
// exact composition of the terms as the formula defines it.
struct AsymptoticEstimate {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::string neglected_order;

    double term(const std::string& label) const;
};

struct BergPurcellResult {
    double capacitance = 0.0;
    double flux = 0.0;
};

// C = N a0 R0 / (N a0 + pi R0), J = 4 pi D C.
BergPurcellResult berg_purcell(int n_pores, double pore_radius, double sphere_radius,
                               double diffusivity);

// kappa = 4 D sigma / (pi a).
double leakage_bp(double sigma, double pore_radius, double diffusivity);

// kappa = (4 D sigma / (pi a)) (1 + alpha sqrt(sigma) - beta sigma^2)/(1-sigma)^2.
// The fit parameters alpha/beta are caller-supplied.
double leakage_be(double sigma, double pore_radius, double diffusivity, double alpha_param,
                  double beta_param);

// Three-term planar flux for pores at centers x_j with radii eps*a_j:
//   J = 4 D N eps abar [ 1 - (2 eps)/(N pi abar) S2 + (4 eps^2)/(N pi^2 abar) S3 ],
// S2 the pairwise competition sum and S3 the triplet sum (evaluated in its
// factorized O(N^2) form). Neglected order eps^3 relative.
AsymptoticEstimate planar_asymptotic_flux(const std::vector<Vec3>& centers,
                                          const std::vector<double>& radius_factors, double eps,
                                          double diffusivity);

// Same with a_j = 1, keeping only the first `n_terms` (1, 2 or 3) corrections.
AsymptoticEstimate planar_asymptotic_flux_unit(const std::vector<Vec3>& centers, double eps,
                                               double diffusivity, int n_terms = 3);

// Sphere flux for N equal pores of chord radius eps:
// J = 4 eps D N [1 - (eps/pi) log(2 eps)
//                + (eps/pi)(3/2 - (2/N) sum_{k!=j} g_s(|x_j - x_k|))].
AsymptoticEstimate sphere_asymptotic_flux(const std::vector<Vec3>& centers, double eps,
                                          double diffusivity);

// Single spherical pore: J = 4 D eps [1 + (eps/pi)(log 2eps - 3/2)
//                                       - (eps^2/pi^2)(pi^2+21)/36]^{-1}.
// n_terms = 2 drops the eps^2 bracket term; n_terms = 3 keeps it.
AsymptoticEstimate sphere_single_pore_flux(double eps, double diffusivity, int n_terms = 3);

// Two coplanar unit discs at center distance d > 2: the six printed series
// terms, evaluated in extended precision; truncation order d^{-6}.
struct SeriesValue {
    double value = 0.0;
    std::string neglected_order;
};
SeriesValue strieder_two_pore_flux(double separation, double diffusivity);

// Homogenized sphere flux at absorbing area fraction sigma and pore radius eps:
// J = 4 pi D [1 + (pi eps/4 sigma)(1 - (4/pi) sqrt(sigma)
//            + (sigma/pi) log(4 e^{-1} sqrt(sigma)) + eps^2/(2 pi sqrt(sigma)))]^{-1}.
double homogenized_flux(double sigma, double eps, double diffusivity);

// Exact unit-potential disc solution w(s1, s2, eta) for a disc of radius a:
// w = (2/pi) asin(a / L), L = [sqrt((r+a)^2 + eta^2) + sqrt((r-a)^2 + eta^2)]/2.
double electrified_disk(double s1, double s2, double eta, double a);

}  // namespace porecap
