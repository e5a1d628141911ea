#pragma once

// Adaptive Gauss-Kronrod (7,15) quadrature with support for integrable
// endpoint singularities (logarithmic or inverse-square-root type). Flagged
// endpoints are inset by one unit in the last place and the initial
// subdivision is graded geometrically toward them; Kronrod nodes are interior
// so the singular point itself is never sampled.

#include <functional>
#include <vector>

namespace porecap {

struct EndpointFlags {
    bool left = false;
    bool right = false;
};

struct QuadOptions {
    double abs_tol = 1e-15;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
    bool throw_on_failure = true;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

QuadResult singular_quad_result(const Integrand& f, double a, double b, EndpointFlags flags,
                                const QuadOptions& opts = {});

// Value-returning front end; throws ConvergenceFailure (carrying the best
// estimate and error bound) when the tolerance cannot be met.
double singular_quad(const Integrand& f, double a, double b, EndpointFlags flags = {},
                     double abs_tol = 1e-15, double rel_tol = 1e-8);

// Plain adaptive quadrature for bounded integrands.
double adaptive_quad(const Integrand& f, double a, double b, double abs_tol = 1e-15,
                     double rel_tol = 1e-8);

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration to machine precision. Deterministic; cached per n.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

}  // namespace porecap
