#pragma once

// Surface Green's-function kernels restricted to the boundary and the angular
// moment integrals
//   planar:    H_j(beta)    = int_0^{2pi} cos(j tau) / sqrt(beta^2 + 1 - 2 beta cos tau) dtau
//   spherical: H_j(eta,xi)  = (1/2pi) int_0^{2pi} cos(j tau) (1/d + log(d)/2 - log(2+d)/2) dtau
// where d^2 = xi^2 + eta^2 - xi^2 eta^2 / 2
//           - 2 eta xi sqrt(1 - xi^2/4) sqrt(1 - eta^2/4) cos(tau).
//
// Both integrals are evaluated by singularity-aware decompositions:
// the 1/d moments reduce to the planar H_j through d^2 = A - B cos(tau),
// the log(d) moment has a closed form (Fourier series of the log kernel),
// and only smooth remainders are integrated numerically.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "porecap/geometry.hpp"
#include "porecap/interp.hpp"

namespace porecap {

// --- closed-form building blocks -------------------------------------------

// Complete elliptic integral of the first kind from the complementary
// modulus, K = pi / (2 AGM(1, kp)), accurate to ~1e-15 relative.
double elliptic_K_from_complement(double kp);

// K(k) with k^2 = m.
double elliptic_K(double m);

// int_0^{2pi} dtau / sqrt(beta^2 + 1 - 2 beta cos tau) = 4 K(k) / (1 + beta),
// k^2 = 4 beta / (1+beta)^2; equivalently 2 pi / AGM(1 + beta, |1 - beta|).
double elliptic_ring_integral(double beta);

// int_0^{2pi} dtau / sqrt(A - B cos tau) for A >= B >= 0 (diverges at A = B).
double ring_integral_ab(double A, double B);

// --- surface kernels --------------------------------------------------------

double g_planar(double mu);  // 1/mu, mu > 0
double g_sphere(double mu);  // 1/mu + log(mu/(2+mu))/2, 0 < mu <= 2

// Bounded component int_0^{2pi} (cos(j tau) - 1)/sqrt(beta^2+1-2 beta cos tau) dtau.
// Finite for all beta >= 0 including beta = 1.
double h_planar_bounded(int j, double beta, double abs_tol = 1e-14, double rel_tol = 1e-12);

// Full planar moment; uses the reciprocity H_j(beta) = H_j(1/beta)/beta for
// beta > 1 and throws SingularInput at beta = 1 where the value diverges.
double h_planar(int j, double beta);

// Parameters of d^2 = A - B cos(tau) for two spherical radii eta, xi in [0,2].
struct SphereChord {
    double A = 0.0;
    double B = 0.0;
};
SphereChord sphere_chord_params(double eta, double xi);

// Smooth component -(1/4pi) int_0^{2pi} cos(j tau) log(2 + d) dtau.
double h_sphere_log2d_moment(int j, double eta, double xi, double abs_tol = 1e-14,
                             double rel_tol = 1e-12);

// Full spherical moment by decomposition; throws SingularInput on eta == xi
// (the 1/d moment diverges there, with d identically zero when both are 0).
double h_sphere(int j, double eta, double xi);

// --- tabulation -------------------------------------------------------------

struct KernelTableParams {
    int planar_nodes = 2048;          // beta grid size for the bounded planar part
    int sphere_nodes = 513;           // per-axis grid for the spherical log(2+d) moment
    double sphere_direct_band = 0.1;  // |eta-xi| below which the 2D grid is bypassed

    bool operator==(const KernelTableParams&) const = default;
};

// Precomputed kernel moments for interpolation. Immutable once built. The
// planar tables store only the bounded component; the elliptic part is
// reconstructed exactly at query time, so the divergence at beta = 1 never
// enters the interpolant. The spherical tables store only the smooth
// log(2+d) moment, gridded in the polar angles a = 2 asin(eta/2),
// b = 2 asin(xi/2) where the moment is analytic up to the boundary (the
// chord variables carry square-root behavior at eta, xi = 2).
class KernelTable {
public:
    static KernelTable build(const Surface& surface, int max_j, const KernelTableParams& params);

    const Surface& surface() const { return surface_; }
    int max_j() const { return max_j_; }
    const KernelTableParams& params() const { return params_; }

    // Interpolated counterparts of h_planar / h_sphere (falling back to direct
    // evaluation inside the singular bands).
    double h_planar_tab(int j, double beta) const;
    double h_sphere_tab(int j, double eta, double xi) const;

    // Bounded planar component via the table (any beta in [0, 1]).
    double h_planar_bounded_tab(int j, double beta) const;

    // Lossless binary cache round trip. Files are bit-identical to a rebuild.
    void save(const std::filesystem::path& file) const;
    static std::optional<KernelTable> load(const std::filesystem::path& file);

    // Cache file name for a parameter set, e.g. kernel_sphere_j20_p2048_s513_v1.bin
    static std::string cache_name(const Surface& surface, int max_j,
                                  const KernelTableParams& params);

    // Build with a disk cache: load when present, else build and store.
    static KernelTable cached(const Surface& surface, int max_j, const KernelTableParams& params,
                              const std::filesystem::path& cache_dir);

    const std::vector<double>& planar_beta_nodes() const { return beta_nodes_; }

private:
    Surface surface_;
    int max_j_ = 0;
    KernelTableParams params_;

    std::vector<double> beta_nodes_;
    std::vector<LocalQuintic> planar_bounded_;  // per j

    double sphere_h_ = 0.0;                     // angle-grid spacing
    std::vector<BicubicUniform> sphere_log2d_;  // per j, on [0,pi]^2 in angles
};

// Default cache directory: $PORECAP_CACHE_DIR, else $XDG_CACHE_HOME/porecap,
// else $HOME/.cache/porecap.
std::filesystem::path default_cache_dir();

}  // namespace porecap
