#include "porecap/interp.hpp"

#include <algorithm>
#include <cmath>

#include "porecap/errors.hpp"

namespace porecap {

std::size_t find_cell(const std::vector<double>& xs, double x) {
    if (xs.size() < 2) throw InvalidInput("interp: need at least two nodes");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    return std::min(i, xs.size() - 2);
}

LocalQuintic::LocalQuintic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2 || ys_.size() != xs_.size())
        throw InvalidInput("LocalQuintic: bad node arrays");
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        if (!(xs_[i] < xs_[i + 1])) throw InvalidInput("LocalQuintic: nodes must be increasing");
}

double LocalQuintic::operator()(double x) const {
    const std::size_t n = xs_.size();
    const std::size_t cell = find_cell(xs_, x);
    const std::size_t width = std::min<std::size_t>(6, n);
    std::size_t lo = (cell >= 2) ? cell - 2 : 0;
    lo = std::min(lo, n - width);
    // Barycentric Lagrange on the local stencil.
    double wsum = 0.0, fsum = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
        const std::size_t idx = lo + k;
        double w = 1.0;
        for (std::size_t m = 0; m < width; ++m)
            if (m != k) w *= (xs_[idx] - xs_[lo + m]);
        const double dx = x - xs_[idx];
        if (dx == 0.0) return ys_[idx];
        w = 1.0 / (w * dx);
        wsum += w;
        fsum += w * ys_[idx];
    }
    return fsum / wsum;
}

BicubicUniform::BicubicUniform(double x0, double hx, std::size_t nx, double y0, double hy,
                               std::size_t ny, std::vector<double> values)
    : x0_(x0), hx_(hx), y0_(y0), hy_(hy), nx_(nx), ny_(ny), v_(std::move(values)) {
    if (nx_ < 6 || ny_ < 6 || v_.size() != nx_ * ny_)
        throw InvalidInput("BicubicUniform: grid too small or value size mismatch");
}

namespace {

// 4th-order first-derivative stencil on a uniform grid, with one-sided
// variants near the boundary. Returns derivative in index units.
template <typename At>
double deriv4(const At& at, std::ptrdiff_t i, std::ptrdiff_t n) {
    if (i >= 2 && i + 2 < n)
        return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / 12.0;
    if (i == 0)
        return (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / 12.0;
    if (i == 1)
        return (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / 12.0;
    if (i == n - 1)
        return (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) +
                3.0 * at(n - 5)) /
               12.0;
    // i == n - 2
    return (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) -
            at(n - 5)) /
           12.0;
}

}  // namespace

double BicubicUniform::node_slope_x(std::size_t i, std::size_t j) const {
    auto at = [&](std::ptrdiff_t k) { return v_[static_cast<std::size_t>(k) * ny_ + j]; };
    return deriv4(at, static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(nx_));
}

double BicubicUniform::node_slope_y(std::size_t i, std::size_t j) const {
    auto at = [&](std::ptrdiff_t k) { return v_[i * ny_ + static_cast<std::size_t>(k)]; };
    return deriv4(at, static_cast<std::ptrdiff_t>(j), static_cast<std::ptrdiff_t>(ny_));
}

double BicubicUniform::node_cross(std::size_t i, std::size_t j) const {
    auto at = [&](std::ptrdiff_t k) {
        return node_slope_y(static_cast<std::size_t>(k), j);
    };
    return deriv4(at, static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(nx_));
}

double BicubicUniform::operator()(double x, double y) const {
    double tx = (x - x0_) / hx_;
    double ty = (y - y0_) / hy_;
    std::size_t i = static_cast<std::size_t>(std::clamp<double>(std::floor(tx), 0.0,
                                                                static_cast<double>(nx_ - 2)));
    std::size_t j = static_cast<std::size_t>(std::clamp<double>(std::floor(ty), 0.0,
                                                                static_cast<double>(ny_ - 2)));
    const double u = tx - static_cast<double>(i);
    const double v = ty - static_cast<double>(j);

    double f[2][2], fx[2][2], fy[2][2], fxy[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            f[a][b] = at(i + a, j + b);
            fx[a][b] = node_slope_x(i + a, j + b);
            fy[a][b] = node_slope_y(i + a, j + b);
            fxy[a][b] = node_cross(i + a, j + b);
        }

    auto h = [](double t, double* out) {
        const double t2 = t * t, t3 = t2 * t;
        out[0] = 2 * t3 - 3 * t2 + 1;
        out[1] = t3 - 2 * t2 + t;
        out[2] = -2 * t3 + 3 * t2;
        out[3] = t3 - t2;
    };
    double hu[4], hv[4];
    h(u, hu);
    h(v, hv);

    // Hermite tensor product; slopes are already in index units.
    double result = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            result += f[a][b] * hu[a ? 2 : 0] * hv[b ? 2 : 0];
            result += fx[a][b] * hu[a ? 3 : 1] * hv[b ? 2 : 0];
            result += fy[a][b] * hu[a ? 2 : 0] * hv[b ? 3 : 1];
            result += fxy[a][b] * hu[a ? 3 : 1] * hv[b ? 3 : 1];
        }
    return result;
}

}  // namespace porecap
