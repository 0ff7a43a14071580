#include "fibspec/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "fibspec/errors.hpp"

namespace fibspec {

OrbitResult escape_time(const Point3& p0, std::int64_t max_iter) {
    if (max_iter < 0 || max_iter > 1'000'000)
        throw domain_error("escape_time: max_iter outside [0, 1e6]");
    double g = fricke_vogt(p0);
    double threshold = 3.0 + std::sqrt(std::max(g, 0.0));  // 3 + lambda/2

    OrbitResult r;
    Point3 p = p0;
    r.max_coordinate = std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    for (std::int64_t s = 0; s < max_iter; ++s) {
        bool consecutive = (std::abs(p.x) > 1.0 && std::abs(p.y) > 1.0) ||
                           (std::abs(p.y) > 1.0 && std::abs(p.z) > 1.0);
        if (consecutive && r.max_coordinate > threshold) {
            r.escaped = true;
            r.steps = s;
            r.final_point = p;
            return r;
        }
        p = trace_map(p);
        r.max_coordinate = std::max(r.max_coordinate, std::abs(p.x));
    }
    r.escaped = false;
    r.steps = max_iter;
    r.final_point = p;
    return r;
}

bool spectrum_member(double lambda, double E, std::int64_t max_iter) {
    return !escape_time(line_point(E, lambda), max_iter).escaped;
}

namespace {

// G(x, x/(2x-1), x) and its derivative in x
double per2_constraint(double x, double* deriv = nullptr) {
    double d = 2.0 * x - 1.0;
    double y = x / d;
    double g = 2.0 * x * x + y * y - 2.0 * x * x * y - 1.0;
    if (deriv) {
        double yp = -1.0 / (d * d);
        *deriv = 4.0 * x + 2.0 * y * yp - 4.0 * x * y - 2.0 * x * x * yp;
    }
    return g;
}

}  // namespace

Period2Point per2_solve(double lambda) {
    if (!(lambda >= 0.0 && lambda < 2.0)) throw domain_error("per2_solve: lambda must lie in [0, 2)");
    double target = lambda * lambda / 4.0;

    Period2Point out;
    out.coupling = lambda;
    if (lambda == 0.0) {
        out.x = 1.0;
        out.point = {1.0, 1.0, 1.0};
        out.mu_u = unstable_multiplier(1.0);
        return out;
    }

    // safeguarded Newton on h(x) = g(x) - target over the bracket [1, 2];
    // g is increasing there with g(1) = 0
    double a = 1.0, b = 2.0;
    double x = 1.0 + lambda / (2.0 * std::sqrt(5.0));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        double dh;
        double h = per2_constraint(x, &dh) - target;
        if (std::abs(h) <= 1e-15 * (1.0 + target)) {
            converged = true;
            break;
        }
        if (h > 0.0) b = x; else a = x;
        double step = h / dh;
        double next = x - step;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (next == x) {
            converged = true;
            break;
        }
        x = next;
    }
    if (!converged) throw convergence_error("per2_solve: Newton did not converge in 100 steps");

    out.x = x;
    out.point = {x, x / (2.0 * x - 1.0), x};
    out.mu_u = unstable_multiplier(x);
    return out;
}

double unstable_multiplier(double x) {
    if (x == 0.5) throw domain_error("unstable_multiplier: singular at x = 1/2");
    double radicand = -3.0 + 12.0 * x + 4.0 * x * x - 32.0 * x * x * x + 64.0 * x * x * x * x;
    if (radicand < 0.0) throw domain_error("unstable_multiplier: negative radicand");
    return (1.0 - 2.0 * x + 8.0 * x * x + std::sqrt(radicand)) / (2.0 * (2.0 * x - 1.0));
}

Eigen::Matrix3d dt_jacobian(const Point3& p) {
    Eigen::Matrix3d m;
    m << 2.0 * p.y, 2.0 * p.x, -1.0,
         1.0, 0.0, 0.0,
         0.0, 1.0, 0.0;
    return m;
}

Eigen::Matrix3d dt2_jacobian(const Point3& p) { return dt_jacobian(trace_map(p)) * dt_jacobian(p); }

TorusPoint cat_map(const TorusPoint& t) {
    double a = t.theta + t.phi;
    a -= std::floor(a);
    return {a, t.theta - std::floor(t.theta)};
}

Point3 semiconjugacy(const TorusPoint& t) {
    const double two_pi = 2.0 * M_PI;
    return {std::cos(two_pi * (t.theta + t.phi)), std::cos(two_pi * t.theta),
            std::cos(two_pi * t.phi)};
}

}  // namespace fibspec
