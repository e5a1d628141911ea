#pragma once

// Small interpolation kit used by the kernel and potential tables:
//  - local 6-point Lagrange (quintic) on nonuniform grids, for smooth profiles
//  - bicubic Hermite on uniform 2D grids with 4th-order finite-difference slopes

#include <cstddef>
#include <vector>

namespace porecap {

// Index of the cell [xs[i], xs[i+1]] containing x (clamped to the grid range).
std::size_t find_cell(const std::vector<double>& xs, double x);

class LocalQuintic {
public:
    LocalQuintic() = default;
    LocalQuintic(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    bool empty() const { return xs_.empty(); }

private:
    std::vector<double> xs_, ys_;
};

// Values on the uniform tensor grid x_i = x0 + i*hx (nx points), similarly y.
// Row-major storage: v[i*ny + j] = f(x_i, y_j).
class BicubicUniform {
public:
    BicubicUniform() = default;
    BicubicUniform(double x0, double hx, std::size_t nx, double y0, double hy, std::size_t ny,
                   std::vector<double> values);
    double operator()(double x, double y) const;
    const std::vector<double>& values() const { return v_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }

private:
    double node_slope_x(std::size_t i, std::size_t j) const;
    double node_slope_y(std::size_t i, std::size_t j) const;
    double node_cross(std::size_t i, std::size_t j) const;
    double at(std::size_t i, std::size_t j) const { return v_[i * ny_ + j]; }

    double x0_ = 0, hx_ = 1, y0_ = 0, hy_ = 1;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<double> v_;
};

}  // namespace porecap
