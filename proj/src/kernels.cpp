#include "porecap/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "porecap/errors.hpp"
#include "porecap/quadrature.hpp"

namespace porecap {

double elliptic_K_from_complement(double kp) {
    if (!(kp > 0.0)) throw SingularInput("elliptic K diverges at k = 1");
    if (kp > 1.0) throw DomainError("complementary modulus must be in (0, 1]");
    double a = 1.0, b = kp;
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 2e-16 * a) break;
    }
    return M_PI / (2.0 * a);
}

double elliptic_K(double m) {
    if (!(m >= 0.0) || m >= 1.0) throw DomainError("elliptic_K: modulus^2 must be in [0, 1)");
    return elliptic_K_from_complement(std::sqrt(1.0 - m));
}

double elliptic_ring_integral(double beta) {
    if (!(beta >= 0.0)) throw DomainError("elliptic_ring_integral: beta must be >= 0");
    if (beta == 1.0) throw SingularInput("elliptic_ring_integral diverges at beta = 1");
    // 4K(k)/(1+beta) with k^2 = 4 beta/(1+beta)^2, written through the AGM of
    // the exact complementary pair (1+beta, |1-beta|).
    double a = 1.0 + beta, b = std::abs(1.0 - beta);
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 2e-16 * a) break;
    }
    return 2.0 * M_PI / a;
}

double ring_integral_ab(double A, double B) {
    if (!(A >= 0.0) || !(B >= 0.0) || B > A) throw DomainError("ring_integral_ab: need A >= B >= 0");
    if (A == B) throw SingularInput("ring_integral_ab diverges at A = B");
    double a = std::sqrt(A + B), b = std::sqrt(A - B);
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 2e-16 * a) break;
    }
    return 2.0 * M_PI / a;
}

double g_planar(double mu) {
    if (!(mu > 0.0)) throw DomainError("g_planar: mu must be positive");
    return 1.0 / mu;
}

double g_sphere(double mu) {
    if (!(mu > 0.0) || mu > 2.0) throw DomainError("g_sphere: mu must be in (0, 2]");
    return 1.0 / mu + 0.5 * std::log(mu / (2.0 + mu));
}

double h_planar_bounded(int j, double beta, double abs_tol, double rel_tol) {
    if (j < 0) throw InvalidInput("h_planar_bounded: j must be >= 0");
    if (!(beta >= 0.0)) throw DomainError("h_planar_bounded: beta must be >= 0");
    if (j == 0) return 0.0;
    // Integrand is even about tau = pi; d^2 = (1-beta)^2 + 4 beta sin^2(tau/2)
    // keeps accuracy near beta = 1 where the direct form cancels.
    const double omb = 1.0 - beta;
    auto f = [&](double tau) {
        const double s = std::sin(0.5 * tau);
        const double d2 = omb * omb + 4.0 * beta * s * s;
        return (std::cos(j * tau) - 1.0) / std::sqrt(d2);
    };
    // Near beta = 1 the integrand develops a boundary layer at tau = 0.
    const EndpointFlags flags{std::abs(omb) < 1e-3, false};
    return 2.0 * singular_quad(f, 0.0, M_PI, flags, abs_tol, rel_tol);
}

double h_planar(int j, double beta) {
    if (j < 0) throw InvalidInput("h_planar: j must be >= 0");
    if (!(beta >= 0.0)) throw DomainError("h_planar: beta must be >= 0");
    if (beta == 1.0) throw SingularInput("h_planar diverges at beta = 1");
    if (beta > 1.0) return h_planar(j, 1.0 / beta) / beta;
    return h_planar_bounded(j, beta) + elliptic_ring_integral(beta);
}

SphereChord sphere_chord_params(double eta, double xi) {
    if (!(eta >= 0.0) || eta > 2.0 || !(xi >= 0.0) || xi > 2.0)
        throw DomainError("sphere_chord_params: radii must be in [0, 2]");
    SphereChord p;
    p.A = xi * xi + eta * eta - 0.5 * xi * xi * eta * eta;
    p.B = 2.0 * eta * xi * std::sqrt(1.0 - 0.25 * xi * xi) * std::sqrt(1.0 - 0.25 * eta * eta);
    return p;
}

double h_sphere_log2d_moment(int j, double eta, double xi, double abs_tol, double rel_tol) {
    if (j < 0) throw InvalidInput("h_sphere_log2d_moment: j must be >= 0");
    const SphereChord p = sphere_chord_params(eta, xi);
    const double dmin2 = std::max(0.0, p.A - p.B);
    // A - B cos tau = (A - B) + 2 B sin^2(tau/2); even about tau = pi.
    auto g = [&](double tau) {
        const double s = std::sin(0.5 * tau);
        const double d2 = dmin2 + 2.0 * p.B * s * s;
        return std::cos(j * tau) * std::log(2.0 + std::sqrt(d2));
    };
    return -(1.0 / (4.0 * M_PI)) * 2.0 * adaptive_quad(g, 0.0, M_PI, abs_tol, rel_tol);
}

double h_sphere(int j, double eta, double xi) {
    if (j < 0) throw InvalidInput("h_sphere: j must be >= 0");
    if (eta == xi && eta == 0.0) throw SingularInput("h_sphere: d vanishes identically");
    if (eta == xi) throw SingularInput("h_sphere diverges on the diagonal eta = xi");
    const SphereChord p = sphere_chord_params(eta, xi);

    // 1/d moment: factor A - B cos tau = c (1 + beta^2 - 2 beta cos tau) with
    // c = (A + dmin*dmax)/2 and beta = B/(2c), then reuse the planar moment.
    const double dmin = std::sqrt(std::max(0.0, p.A - p.B));
    const double dmax = std::sqrt(p.A + p.B);
    const double c = 0.5 * (p.A + dmin * dmax);
    double t1;
    if (p.B == 0.0) {
        t1 = (j == 0) ? 1.0 / std::sqrt(p.A) : 0.0;
    } else {
        const double beta = p.B / (2.0 * c);
        t1 = h_planar(j, beta) / (2.0 * M_PI * std::sqrt(c));
    }

    // log(d) moment: Fourier series of log(A - B cos tau) gives
    //   j = 0: (1/4) log c,   j >= 1: -beta^j / (4 j).
    double t2;
    if (j == 0) {
        t2 = 0.25 * std::log(c);
    } else if (p.B == 0.0) {
        t2 = 0.0;
    } else {
        const double beta = p.B / (2.0 * c);
        t2 = -std::pow(beta, j) / (4.0 * j);
    }

    return t1 + t2 + h_sphere_log2d_moment(j, eta, xi);
}

// --- KernelTable -------------------------------------------------------------

namespace {

std::vector<double> make_beta_grid(int n) {
    // Uniform on [0, 0.75], geometric grading of 1-beta from 0.25 down to
    // 1e-7, closed with the node beta = 1 where the bounded part is finite.
    if (n < 64) throw InvalidInput("kernel table: planar_nodes too small");
    const int n1 = n / 2;
    const int n2 = n - n1;
    std::vector<double> nodes;
    nodes.reserve(n + 1);
    for (int i = 0; i < n1; ++i) nodes.push_back(0.75 * i / n1);
    const double r = std::pow(1e-7 / 0.25, 1.0 / (n2 - 1));
    double gap = 0.25;
    for (int i = 0; i < n2; ++i) {
        nodes.push_back(1.0 - gap);
        gap *= r;
    }
    nodes.push_back(1.0);
    return nodes;
}

}  // namespace

KernelTable KernelTable::build(const Surface& surface, int max_j,
                               const KernelTableParams& params) {
    if (max_j < 0) throw InvalidInput("build_kernel_table: max_j must be >= 0");
    if (params.planar_nodes < 64 || params.sphere_nodes < 65)
        throw InvalidInput("build_kernel_table: resolution too coarse");

    KernelTable table;
    table.surface_ = surface;
    table.max_j_ = max_j;
    table.params_ = params;
    table.beta_nodes_ = make_beta_grid(params.planar_nodes);

    const std::size_t nb = table.beta_nodes_.size();
    std::vector<std::vector<double>> planar_vals(max_j + 1, std::vector<double>(nb, 0.0));
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int j = 0; j <= max_j; ++j)
        for (std::size_t i = 0; i < nb; ++i)
            planar_vals[j][i] = h_planar_bounded(j, table.beta_nodes_[i]);
    table.planar_bounded_.reserve(max_j + 1);
    for (int j = 0; j <= max_j; ++j)
        table.planar_bounded_.emplace_back(table.beta_nodes_, planar_vals[j]);

    if (surface.kind == SurfaceKind::UnitSphere) {
        const std::size_t n = static_cast<std::size_t>(params.sphere_nodes);
        table.sphere_h_ = M_PI / static_cast<double>(n - 1);
        for (int j = 0; j <= max_j; ++j) {
            std::vector<double> grid(n * n, 0.0);
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = 0; i < n; ++i) {
                const double eta = 2.0 * std::sin(0.5 * table.sphere_h_ * i);
                for (std::size_t k = i; k < n; ++k) {
                    const double xi = 2.0 * std::sin(0.5 * table.sphere_h_ * k);
                    grid[i * n + k] = h_sphere_log2d_moment(j, eta, xi);
                }
            }
            for (std::size_t i = 0; i < n; ++i)  // symmetric in (eta, xi)
                for (std::size_t k = 0; k < i; ++k) grid[i * n + k] = grid[k * n + i];
            table.sphere_log2d_.emplace_back(0.0, table.sphere_h_, n, 0.0, table.sphere_h_, n,
                                             std::move(grid));
        }
    }
    return table;
}

double KernelTable::h_planar_bounded_tab(int j, double beta) const {
    if (j < 0 || j > max_j_) throw InvalidInput("kernel table: j out of range");
    if (!(beta >= 0.0) || beta > 1.0)
        throw DomainError("h_planar_bounded_tab: beta must be in [0, 1]");
    return planar_bounded_[j](beta);
}

double KernelTable::h_planar_tab(int j, double beta) const {
    if (beta == 1.0) throw SingularInput("h_planar diverges at beta = 1");
    if (beta > 1.0) return h_planar_tab(j, 1.0 / beta) / beta;
    return h_planar_bounded_tab(j, beta) + elliptic_ring_integral(beta);
}

double KernelTable::h_sphere_tab(int j, double eta, double xi) const {
    if (surface_.kind != SurfaceKind::UnitSphere)
        throw InvalidInput("kernel table was built for the planar geometry");
    if (j < 0 || j > max_j_) throw InvalidInput("kernel table: j out of range");
    if (eta == xi) throw SingularInput("h_sphere diverges on the diagonal eta = xi");

    const SphereChord p = sphere_chord_params(eta, xi);
    const double dmin = std::sqrt(std::max(0.0, p.A - p.B));
    const double dmax = std::sqrt(p.A + p.B);
    const double c = 0.5 * (p.A + dmin * dmax);
    double t1, t2;
    if (p.B == 0.0) {
        t1 = (j == 0) ? 1.0 / std::sqrt(p.A) : 0.0;
        t2 = (j == 0) ? 0.25 * std::log(c) : 0.0;
    } else {
        const double beta = p.B / (2.0 * c);
        t1 = (beta > 1.0 ? h_planar_tab(j, beta)
                         : h_planar_bounded_tab(j, beta) + elliptic_ring_integral(beta)) /
             (2.0 * M_PI * std::sqrt(c));
        t2 = (j == 0) ? 0.25 * std::log(c) : -std::pow(beta, j) / (4.0 * j);
    }

    const double a_ang = 2.0 * std::asin(std::min(1.0, 0.5 * eta));
    const double b_ang = 2.0 * std::asin(std::min(1.0, 0.5 * xi));
    double t3;
    if (std::abs(a_ang - b_ang) < params_.sphere_direct_band)
        t3 = h_sphere_log2d_moment(j, eta, xi);
    else
        t3 = sphere_log2d_[j](a_ang, b_ang);
    return t1 + t2 + t3;
}

// --- cache -------------------------------------------------------------------

namespace {

constexpr std::uint32_t kCacheMagic = 0x50434b54;  // "PCKT"
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return bool(in);
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    const std::uint64_t n = v.size();
    write_pod(out, n);
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
}

bool read_doubles(std::istream& in, std::vector<double>& v) {
    std::uint64_t n = 0;
    if (!read_pod(in, n)) return false;
    v.resize(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    return bool(in);
}

}  // namespace

void KernelTable::save(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw InvalidInput("cannot open kernel cache file for writing: " + file.string());
    write_pod(out, kCacheMagic);
    write_pod(out, kCacheVersion);
    const std::uint8_t kind = surface_.kind == SurfaceKind::UnitSphere ? 1 : 0;
    write_pod(out, kind);
    write_pod(out, static_cast<std::int32_t>(max_j_));
    write_pod(out, static_cast<std::int32_t>(params_.planar_nodes));
    write_pod(out, static_cast<std::int32_t>(params_.sphere_nodes));
    write_pod(out, params_.sphere_direct_band);
    write_doubles(out, beta_nodes_);
    for (const auto& interp : planar_bounded_) write_doubles(out, interp.ys());
    if (surface_.kind == SurfaceKind::UnitSphere)
        for (const auto& grid : sphere_log2d_) write_doubles(out, grid.values());
}

std::optional<KernelTable> KernelTable::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::uint32_t magic = 0, version = 0;
    std::uint8_t kind = 0;
    std::int32_t max_j = 0, planar_nodes = 0, sphere_nodes = 0;
    KernelTable t;
    if (!read_pod(in, magic) || magic != kCacheMagic) return std::nullopt;
    if (!read_pod(in, version) || version != kCacheVersion) return std::nullopt;
    if (!read_pod(in, kind) || !read_pod(in, max_j) || !read_pod(in, planar_nodes) ||
        !read_pod(in, sphere_nodes) || !read_pod(in, t.params_.sphere_direct_band))
        return std::nullopt;
    t.surface_.kind = kind ? SurfaceKind::UnitSphere : SurfaceKind::Plane;
    t.max_j_ = max_j;
    t.params_.planar_nodes = planar_nodes;
    t.params_.sphere_nodes = sphere_nodes;
    if (!read_doubles(in, t.beta_nodes_)) return std::nullopt;
    for (int j = 0; j <= max_j; ++j) {
        std::vector<double> ys;
        if (!read_doubles(in, ys) || ys.size() != t.beta_nodes_.size()) return std::nullopt;
        t.planar_bounded_.emplace_back(t.beta_nodes_, std::move(ys));
    }
    if (t.surface_.kind == SurfaceKind::UnitSphere) {
        const std::size_t n = static_cast<std::size_t>(sphere_nodes);
        t.sphere_h_ = 2.0 / static_cast<double>(n - 1);
        for (int j = 0; j <= max_j; ++j) {
            std::vector<double> vals;
            if (!read_doubles(in, vals) || vals.size() != n * n) return std::nullopt;
            t.sphere_log2d_.emplace_back(0.0, t.sphere_h_, n, 0.0, t.sphere_h_, n,
                                         std::move(vals));
        }
    }
    return t;
}

std::string KernelTable::cache_name(const Surface& surface, int max_j,
                                    const KernelTableParams& params) {
    const char* kind = surface.kind == SurfaceKind::UnitSphere ? "sphere" : "plane";
    return "kernel_" + std::string(kind) + "_j" + std::to_string(max_j) + "_p" +
           std::to_string(params.planar_nodes) + "_s" + std::to_string(params.sphere_nodes) +
           "_v" + std::to_string(kCacheVersion) + ".bin";
}

KernelTable KernelTable::cached(const Surface& surface, int max_j,
                                const KernelTableParams& params,
                                const std::filesystem::path& cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    const auto file = cache_dir / cache_name(surface, max_j, params);
    if (auto loaded = load(file)) {
        if (loaded->max_j() == max_j && loaded->params() == params &&
            loaded->surface().kind == surface.kind)
            return std::move(*loaded);
    }
    KernelTable table = build(surface, max_j, params);
    table.save(file);
    return table;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("PORECAP_CACHE_DIR")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::filesystem::path(xdg) / "porecap";
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "porecap";
    return std::filesystem::temp_directory_path() / "porecap_cache";
}

}  // namespace porecap
