#pragma once

#include <stdexcept>
#include <string>

namespace porecap {

// Bad arguments: wrong mode parity, empty ranges, unknown enum names, ...
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation (mu <= 0, xi >= alpha, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Evaluation requested exactly at a non-removable singularity (beta = 1, eta = xi, ...).
class SingularInput : public std::domain_error {
public:
    explicit SingularInput(const std::string& what) : std::domain_error(what) {}
};

// Adaptive quadrature ran out of subdivision budget. Carries the best estimate
// so callers can decide whether the partial result is usable.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate(best_estimate), error_bound(error_bound) {}
    double best_estimate;
    double error_bound;
};

// Configuration the numerical pipeline does not support (mixed pore radii, ...).
class UnsupportedConfiguration : public std::runtime_error {
public:
    explicit UnsupportedConfiguration(const std::string& what) : std::runtime_error(what) {}
};

// Failures inside the linear-algebra stage (singular system, bad residual).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate(condition_estimate) {}
    double condition_estimate;
};

}  // namespace porecap
