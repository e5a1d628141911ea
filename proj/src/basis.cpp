#include "porecap/basis.hpp"

#include <cmath>
#include <cstdlib>

#include "porecap/errors.hpp"

namespace porecap {

std::vector<ModeIndex> enumerate_modes(int truncation_degree) {
    if (truncation_degree < 0) throw InvalidInput("truncation degree must be >= 0");
    std::vector<ModeIndex> modes;
    modes.reserve(mode_count(truncation_degree));
    for (int m = 0; m <= truncation_degree; ++m)
        for (int j = -m; j <= m; j += 2) modes.push_back({m, j});
    return modes;
}

std::size_t mode_count(int truncation_degree) {
    const std::size_t mp1 = static_cast<std::size_t>(truncation_degree) + 1;
    return mp1 * (mp1 + 1) / 2;
}

namespace {

constexpr int kMaxDegree = 40;

void check_mode(int m, int j_abs) {
    if (m < 0 || j_abs < 0 || j_abs > m || (m - j_abs) % 2 != 0)
        throw InvalidInput("invalid Zernike mode (m, j) parity or range");
    if (m > kMaxDegree) throw InvalidInput("Zernike degree above supported maximum of 40");
}

}  // namespace

double zernike_radial(int m, int j, double r) {
    check_mode(m, j);
    // R_m^j(r) = sum_s (-1)^s binom coefficients r^{m-2s}; the coefficients are
    // exact integers well below 2^53 for m <= 40, built by the ratio recurrence
    // c_{s+1}/c_s = -(h1-s)(h2-s)/((m-s)(s+1)) from c_0 = m!/(h1! h2!).
    const int h1 = (m + j) / 2;
    const int h2 = (m - j) / 2;
    double c = 1.0;  // c_0 = binom(m, h1)
    for (int i = 1; i <= h2; ++i) c = c * (m - i + 1) / i;

    // Horner in r^2 over terms of degree m, m-2, ..., j.
    const double r2 = r * r;
    double coeff = c;
    double acc = coeff;
    for (int s = 1; s <= h2; ++s) {
        coeff = -coeff * (h1 - s + 1) * (h2 - s + 1) / (static_cast<double>(m - s + 1) * s);
        acc = acc * r2 + coeff;
    }
    // acc holds sum_s c_s r^{2(h2 - s)}; multiply by r^j for the full radial part.
    double value = acc;
    if (j > 0) value *= std::pow(r, j);

    const double norm = (j == 0) ? std::sqrt((m + 1) / M_PI) : std::sqrt(2.0 * (m + 1) / M_PI);
    return norm * value;
}

double angular_factor(int j, double t) {
    if (j > 0) return std::sin(j * t);
    if (j < 0) return std::cos(-j * t);
    return 1.0;
}

double zernike_eval(ModeIndex mode, double r, double t) {
    return zernike_radial(mode.m, std::abs(mode.j), r) * angular_factor(mode.j, t);
}

double flux_basis_eval(ModeIndex mode, double xi, double t, double alpha) {
    if (!mode.valid()) throw InvalidInput("invalid flux-basis mode");
    if (!(alpha > 0.0)) throw InvalidInput("flux_basis_eval: alpha must be positive");
    if (!(xi >= 0.0) || xi >= alpha)
        throw DomainError("flux_basis_eval: xi must satisfy 0 <= xi < alpha");
    const double radial = std::pow(xi / alpha, mode.m) / std::sqrt((alpha - xi) * (alpha + xi));
    return radial * angular_factor(mode.j, t);
}

double wallis_integral(int n) {
    if (n < 0) throw InvalidInput("wallis_integral: n must be >= 0");
    double w = (n % 2 == 0) ? M_PI / 2.0 : 1.0;
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) w *= (k - 1.0) / k;
    return w;
}

double flux_basis_total_flux(ModeIndex mode, double alpha) {
    if (!mode.valid()) throw InvalidInput("invalid flux-basis mode");
    if (mode.j != 0) return 0.0;
    // int_0^alpha (xi/alpha)^m (alpha^2-xi^2)^{-1/2} xi dxi = alpha W_{m+1}.
    return 2.0 * M_PI * alpha * wallis_integral(mode.m + 1);
}

}  // namespace porecap
