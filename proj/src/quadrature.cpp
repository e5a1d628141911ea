#include "porecap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <vector>

#include "porecap/errors.hpp"

namespace porecap {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kWgk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kWg[7] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327,
                           0.381830050505118944950369775488975,
                           0.279705391489276667901467771423780,
                           0.129484966168869693270611432679082};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Integrand& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum_k = 0.0, sum_g = 0.0, sum_abs = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double y = f(c + h * kXgk[i]);
        sum_k += kWgk[i] * y;
        sum_abs += kWgk[i] * std::abs(y);
        if (i % 2 == 1) sum_g += kWg[i / 2] * y;
    }
    evals += 15;
    const double value = sum_k * h;
    double err = std::abs((sum_k - sum_g) * h);
    // QUADPACK-style sharpening of the raw Gauss/Kronrod difference.
    const double scale = sum_abs * std::abs(h);
    if (scale > 0.0 && err > 0.0) {
        const double r = std::pow(200.0 * err / scale, 1.5);
        if (r < 1.0) err = scale * r;
    }
    return {a, b, value, err};
}

double next_after_inward(double x, double toward) { return std::nextafter(x, toward); }

}  // namespace

namespace {

// Core adaptive loop on [lo, hi] with optional geometric seeding toward one end.
QuadResult adaptive_core(const Integrand& f, double lo, double hi, int seed_toward,
                         const QuadOptions& opts) {
    QuadResult res;
    std::vector<double> cuts;
    cuts.push_back(lo);
    const double width = hi - lo;
    if (seed_toward < 0) {
        for (int k = 26; k >= 1; --k) cuts.push_back(lo + width * 0.5 * std::pow(2.0, -k));
    } else if (seed_toward > 0) {
        for (int k = 1; k <= 26; ++k) cuts.push_back(hi - width * 0.5 * std::pow(2.0, -k));
    }
    cuts.push_back(hi);

    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Interval iv = gk15(f, cuts[i], cuts[i + 1], res.evaluations);
        total += iv.value;
        total_err += iv.error;
        heap.push(iv);
    }

    int n_intervals = static_cast<int>(heap.size());
    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
           n_intervals < opts.max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b)) {  // interval at round-off width
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Interval l = gk15(f, worst.a, m, res.evaluations);
        Interval r = gk15(f, m, worst.b, res.evaluations);
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++n_intervals;
    }

    res.value = total;
    res.error = total_err;
    res.converged = total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    return res;
}

}  // namespace

QuadResult singular_quad_result(const Integrand& f, double a, double b, EndpointFlags flags,
                                const QuadOptions& opts) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        std::swap(flags.left, flags.right);
        sign = -1.0;
    }

    if (flags.left && flags.right) {
        const double mid = 0.5 * (a + b);
        QuadOptions half = opts;
        half.abs_tol = 0.5 * opts.abs_tol;
        half.throw_on_failure = false;
        QuadResult left = singular_quad_result(f, a, mid, {true, false}, half);
        QuadResult right = singular_quad_result(f, mid, b, {false, true}, half);
        res.value = sign * (left.value + right.value);
        res.error = left.error + right.error;
        res.evaluations = left.evaluations + right.evaluations;
        res.converged = left.converged && right.converged;
    } else if (flags.left || flags.right) {
        // Substitute u^2 for the distance to the singular endpoint: inverse
        // square roots become bounded and logs become u log u. Evaluation
        // points are kept at least one ulp inside the interval.
        const double umax = std::sqrt(b - a);
        Integrand g;
        if (flags.left) {
            const double inset = next_after_inward(a, b);
            g = [&f, a, inset](double u) { return 2.0 * u * f(std::max(a + u * u, inset)); };
        } else {
            const double inset = next_after_inward(b, a);
            g = [&f, b, inset](double u) { return 2.0 * u * f(std::min(b - u * u, inset)); };
        }
        // No pre-grading: the substitution has already smoothed the integrand
        // and refinement toward u = 0 would sample f inside its own round-off
        // cancellation zone near the singular endpoint.
        QuadResult inner = adaptive_core(g, 0.0, umax, 0, opts);
        res = inner;
        res.value = sign * inner.value;
    } else {
        QuadResult inner = adaptive_core(f, a, b, 0, opts);
        res = inner;
        res.value = sign * inner.value;
    }

    if (!res.converged && opts.throw_on_failure)
        throw ConvergenceFailure("singular_quad: tolerance not met within subdivision budget",
                                 res.value, res.error);
    return res;
}

double singular_quad(const Integrand& f, double a, double b, EndpointFlags flags, double abs_tol,
                     double rel_tol) {
    QuadOptions opts;
    opts.abs_tol = abs_tol;
    opts.rel_tol = rel_tol;
    return singular_quad_result(f, a, b, flags, opts).value;
}

double adaptive_quad(const Integrand& f, double a, double b, double abs_tol, double rel_tol) {
    return singular_quad(f, a, b, EndpointFlags{}, abs_tol, rel_tol);
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace porecap
