#include "porecap/formulas.hpp"

#include <cmath>

#include "porecap/errors.hpp"
#include "porecap/kernels.hpp"

namespace porecap {

double AsymptoticEstimate::term(const std::string& label) const {
    for (const auto& [name, value] : terms)
        if (name == label) return value;
    throw InvalidInput("no such term: " + label);
}

BergPurcellResult berg_purcell(int n_pores, double pore_radius, double sphere_radius,
                               double diffusivity) {
    if (n_pores < 0 || !(pore_radius > 0.0) || !(sphere_radius > 0.0) || !(diffusivity > 0.0))
        throw InvalidInput("berg_purcell: bad arguments");
    BergPurcellResult r;
    r.capacitance = n_pores * pore_radius * sphere_radius /
                    (n_pores * pore_radius + M_PI * sphere_radius);
    r.flux = 4.0 * M_PI * diffusivity * r.capacitance;
    return r;
}

double leakage_bp(double sigma, double pore_radius, double diffusivity) {
    if (!(sigma > 0.0) || sigma >= 1.0 || !(pore_radius > 0.0))
        throw DomainError("leakage_bp: sigma must be in (0,1), radius positive");
    return 4.0 * diffusivity * sigma / (M_PI * pore_radius);
}

double leakage_be(double sigma, double pore_radius, double diffusivity, double alpha_param,
                  double beta_param) {
    if (!(sigma > 0.0) || sigma >= 1.0)
        throw DomainError("leakage_be: sigma must be in (0,1)");
    const double f = (1.0 + alpha_param * std::sqrt(sigma) - beta_param * sigma * sigma) /
                     ((1.0 - sigma) * (1.0 - sigma));
    return leakage_bp(sigma, pore_radius, diffusivity) * f;
}

namespace {

void check_distinct_centers(const std::vector<Vec3>& centers) {
    for (std::size_t j = 0; j < centers.size(); ++j)
        for (std::size_t k = j + 1; k < centers.size(); ++k)
            if ((centers[j] - centers[k]).norm() == 0.0)
                throw DomainError("coincident pore centers");
}

}  // namespace

AsymptoticEstimate planar_asymptotic_flux(const std::vector<Vec3>& centers,
                                          const std::vector<double>& radius_factors, double eps,
                                          double diffusivity) {
    if (centers.empty() || centers.size() != radius_factors.size())
        throw InvalidInput("planar_asymptotic_flux: empty or mismatched inputs");
    if (!(eps > 0.0) || !(diffusivity > 0.0))
        throw InvalidInput("planar_asymptotic_flux: eps and D must be positive");
    check_distinct_centers(centers);

    const std::size_t n = centers.size();
    double abar = 0.0;
    for (double a : radius_factors) abar += a;
    abar /= static_cast<double>(n);

    // s_j = sum_{k != j} a_k / |x_j - x_k|; pairwise sum and the factorized
    // triplet sum follow in O(N^2).
    std::vector<double> s(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) s[j] += radius_factors[k] / (centers[j] - centers[k]).norm();
    double pair_sum = 0.0, triplet_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        pair_sum += radius_factors[j] * s[j];
        triplet_sum += radius_factors[j] * s[j] * s[j];
    }

    const double leading = 4.0 * diffusivity * static_cast<double>(n) * eps * abar;
    const double pairwise =
        leading * (-2.0 * eps / (static_cast<double>(n) * M_PI * abar)) * pair_sum;
    const double triplet =
        leading * (4.0 * eps * eps / (static_cast<double>(n) * M_PI * M_PI * abar)) * triplet_sum;

    AsymptoticEstimate est;
    est.terms = {{"leading", leading}, {"pairwise", pairwise}, {"triplet", triplet}};
    est.value = leading + pairwise + triplet;
    est.neglected_order = "O(eps^3)";
    return est;
}

AsymptoticEstimate planar_asymptotic_flux_unit(const std::vector<Vec3>& centers, double eps,
                                               double diffusivity, int n_terms) {
    if (n_terms < 1 || n_terms > 3)
        throw InvalidInput("planar_asymptotic_flux_unit: n_terms must be 1, 2 or 3");
    AsymptoticEstimate full = planar_asymptotic_flux(
        centers, std::vector<double>(centers.size(), 1.0), eps, diffusivity);
    AsymptoticEstimate est;
    est.terms.assign(full.terms.begin(), full.terms.begin() + n_terms);
    est.value = 0.0;
    for (const auto& [name, v] : est.terms) est.value += v;
    est.neglected_order = (n_terms == 1) ? "O(eps)" : (n_terms == 2) ? "O(eps^2)" : "O(eps^3)";
    return est;
}

AsymptoticEstimate sphere_asymptotic_flux(const std::vector<Vec3>& centers, double eps,
                                          double diffusivity) {
    if (centers.empty()) throw InvalidInput("sphere_asymptotic_flux: no centers");
    if (!(eps > 0.0) || !(diffusivity > 0.0))
        throw InvalidInput("sphere_asymptotic_flux: eps and D must be positive");
    check_distinct_centers(centers);
    const Surface sphere{SurfaceKind::UnitSphere};

    const double n = static_cast<double>(centers.size());
    double interaction = 0.0;
    for (std::size_t j = 0; j < centers.size(); ++j)
        for (std::size_t k = 0; k < centers.size(); ++k)
            if (k != j) interaction += g_sphere(chord_distance(centers[j], centers[k], sphere));

    const double leading = 4.0 * eps * diffusivity * n;
    const double log_term = leading * (-(eps / M_PI) * std::log(2.0 * eps));
    const double curvature_interaction =
        leading * (eps / M_PI) * (1.5 - (2.0 / n) * interaction);

    AsymptoticEstimate est;
    est.terms = {{"leading", leading},
                 {"log", log_term},
                 {"curvature_interaction", curvature_interaction}};
    est.value = leading + log_term + curvature_interaction;
    est.neglected_order = "O(eps^2 log eps)";
    return est;
}

AsymptoticEstimate sphere_single_pore_flux(double eps, double diffusivity, int n_terms) {
    if (!(eps > 0.0) || eps >= 1.0)
        throw InvalidInput("sphere_single_pore_flux: eps must be in (0, 1)");
    if (n_terms != 2 && n_terms != 3)
        throw InvalidInput("sphere_single_pore_flux: n_terms must be 2 or 3");
    const double bracket1 = (eps / M_PI) * (std::log(2.0 * eps) - 1.5);
    const double bracket2 = -(eps * eps / (M_PI * M_PI)) * (M_PI * M_PI + 21.0) / 36.0;
    const double bracket = 1.0 + bracket1 + (n_terms == 3 ? bracket2 : 0.0);

    AsymptoticEstimate est;
    est.value = 4.0 * diffusivity * eps / bracket;
    est.terms = {{"leading", 4.0 * diffusivity * eps},
                 {"bracket_log", bracket1},
                 {"bracket_eps2", n_terms == 3 ? bracket2 : 0.0}};
    est.neglected_order = (n_terms == 3) ? "O(eps^3 log eps)" : "O(eps^2)";
    return est;
}

SeriesValue strieder_two_pore_flux(double separation, double diffusivity) {
    if (!(separation > 2.0))
        throw DomainError("strieder_two_pore_flux: unit discs require separation > 2");
    // Long-double Horner in 1/d with the printed rational-pi coefficients.
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double d = separation;
    const long double c1 = -2.0L / pi;
    const long double c2 = 4.0L / (pi * pi);
    const long double c3 = -2.0L * (12.0L + pi * pi) / (3.0L * pi * pi * pi);
    const long double c4 = 16.0L * (3.0L + pi * pi) / (3.0L * pi * pi * pi * pi);
    const long double c5 =
        -4.0L * (120.0L + 70.0L * pi * pi + 3.0L * pi * pi * pi * pi) /
        (15.0L * pi * pi * pi * pi * pi);
    const long double inv = 1.0L / d;
    const long double bracket = 1.0L + inv * (c1 + inv * (c2 + inv * (c3 + inv * (c4 + inv * c5))));
    SeriesValue s;
    s.value = static_cast<double>(8.0L * static_cast<long double>(diffusivity) * bracket);
    s.neglected_order = "O(d^-6)";
    return s;
}

double homogenized_flux(double sigma, double eps, double diffusivity) {
    if (!(sigma > 0.0) || sigma >= 1.0 || !(eps > 0.0))
        throw InvalidInput("homogenized_flux: need sigma in (0,1) and eps > 0");
    const double rs = std::sqrt(sigma);
    const double bracket = 1.0 + (M_PI * eps / (4.0 * sigma)) *
                                     (1.0 - (4.0 / M_PI) * rs +
                                      (sigma / M_PI) * std::log(4.0 * std::exp(-1.0) * rs) +
                                      eps * eps / (2.0 * M_PI * rs));
    return 4.0 * M_PI * diffusivity / bracket;
}

double electrified_disk(double s1, double s2, double eta, double a) {
    if (!(a > 0.0)) throw InvalidInput("electrified_disk: disc radius must be positive");
    if (!(eta >= 0.0)) throw DomainError("electrified_disk: eta must be >= 0");
    const double r = std::sqrt(s1 * s1 + s2 * s2);
    const double lp = std::sqrt((r + a) * (r + a) + eta * eta);
    const double lm = std::sqrt((r - a) * (r - a) + eta * eta);
    const double big_l = 0.5 * (lp + lm);
    return (2.0 / M_PI) * std::asin(std::min(1.0, a / big_l));
}

}  // namespace porecap
