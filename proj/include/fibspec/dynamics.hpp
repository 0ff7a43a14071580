#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "fibspec/trace_core.hpp"

namespace fibspec {

struct OrbitResult {
    bool escaped = false;
    std::int64_t steps = 0;       // iterations performed (escape step, or max_iter)
    Point3 final_point{};
    double max_coordinate = 0.0;  // running max of |components| over the orbit
};

/// Iterate the trace map until the escape rule fires or max_iter is reached.
/// Escape rule: two consecutive components of the current triple exceed 1 in
/// absolute value and the running coordinate maximum exceeds 3 + lambda/2,
/// with lambda read off the invariant surface (lambda/2 = sqrt(max(G, 0))).
/// escaped == false means bounded up to max_iter, not proven bounded.
OrbitResult escape_time(const Point3& p, std::int64_t max_iter);

/// One-sided membership test for the spectrum: the forward orbit of the line
/// point of E stays bounded for max_iter iterations.
bool spectrum_member(double lambda, double E, std::int64_t max_iter);

struct Period2Point {
    double coupling = 0.0;
    double x = 1.0;               // the x > 1 branch near the corner (1,1,1)
    Point3 point{};               // (x, x/(2x-1), x)
    double mu_u = 0.0;            // unstable multiplier lambda^u(x)
};

/// Solve G(x, x/(2x-1), x) = lambda^2/4 for x near 1 by safeguarded Newton
/// seeded at 1 + lambda/(2 sqrt 5); returns the x > 1 branch. lambda < 2.
Period2Point per2_solve(double lambda);

/// Closed-form largest eigenvalue of the doubled-map Jacobian along the
/// period-2 curve:
/// (1 - 2x + 8x^2 + sqrt(-3 + 12x + 4x^2 - 32x^3 + 64x^4)) / (2(2x - 1)).
double unstable_multiplier(double x);

/// Jacobian of the trace map: [[2y, 2x, -1], [1,0,0], [0,1,0]].
Eigen::Matrix3d dt_jacobian(const Point3& p);
/// Chain rule DT(T(p)) * DT(p).
Eigen::Matrix3d dt2_jacobian(const Point3& p);

struct TorusPoint {
    double theta = 0.0, phi = 0.0;  // reduced mod 1
};

/// Hyperbolic torus automorphism (theta, phi) -> (theta + phi, theta) mod 1.
TorusPoint cat_map(const TorusPoint& t);

/// Semiconjugacy onto the central sphere of the zero-coupling surface:
/// (cos 2 pi (theta + phi), cos 2 pi theta, cos 2 pi phi).
Point3 semiconjugacy(const TorusPoint& t);

}  // namespace fibspec
