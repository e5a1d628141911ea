#pragma once

// Orthonormal Zernike basis for the surface potential on a circular pore and
// the matching edge-singular flux basis
//   q_mj(xi, t) = (alpha^2 - xi^2)^{-1/2} (xi/alpha)^m * {sin(jt) | 1 | cos(|j|t)}
// with j > 0 <-> sin, j < 0 <-> cos, j = 0 axisymmetric.

#include <cmath>
#include <cstdlib>
#include <vector>

namespace porecap {

struct ModeIndex {
    int m = 0;  // polynomial degree, >= 0
    int j = 0;  // angular index, |j| <= m, m - |j| even

    bool valid() const { return m >= 0 && std::abs(j) <= m && (m - std::abs(j)) % 2 == 0; }
};

// Modes of degree <= M in deterministic (m ascending, j ascending) order;
// count is (M+1)(M+2)/2.
std::vector<ModeIndex> enumerate_modes(int truncation_degree);
std::size_t mode_count(int truncation_degree);

// Radial factor of the orthonormal Zernike polynomial, including the
// normalization, evaluated by the explicit binomial sum (supported to m = 40).
double zernike_radial(int m, int j, double r);

// Full Zernike polynomial Z_mj(r, t).
double zernike_eval(ModeIndex mode, double r, double t);

// Edge-singular flux basis function; requires xi < alpha.
double flux_basis_eval(ModeIndex mode, double xi, double t, double alpha);

// Integral of q_mj over its pore (area element xi dxi dt): zero unless j = 0,
// else 2*pi*alpha * W_{m+1} with W the Wallis integral.
double flux_basis_total_flux(ModeIndex mode, double alpha);

// Wallis integral W_n = int_0^{pi/2} sin^n(s) ds by the stable downward
// recurrence W_n = (n-1)/n * W_{n-2}.
double wallis_integral(int n);

// Angular factor {sin(jt) | 1 | cos(|j|t)} shared by both bases.
double angular_factor(int j, double t);

}  // namespace porecap
