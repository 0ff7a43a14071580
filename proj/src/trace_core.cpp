#include "fibspec/trace_core.hpp"

#include <cmath>

#include "fibspec/errors.hpp"

namespace fibspec {

std::int64_t fibonacci(int k) {
    if (k < -1) throw domain_error("fibonacci: index must be >= -1");
    if (k > 90) throw domain_error("fibonacci: index exceeds 64-bit range");
    std::int64_t a = 0, b = 1;  // F_{-1}, F_0
    for (int i = 0; i < k + 1; ++i) {
        std::int64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

double half_trace(double E, double lambda, int k) {
    if (k < -1) throw domain_error("half_trace: level must be >= -1");
    if (k == -1) return 1.0;
    if (k == 0) return E / 2.0;
    double x2 = 1.0;             // x_{-1}
    double x1 = E / 2.0;         // x_0
    double x0 = (E - lambda) / 2.0;  // x_1
    for (int i = 1; i < k; ++i) {
        double next = 2.0 * x0 * x1 - x2;
        x2 = x1;
        x1 = x0;
        x0 = next;
    }
    return x0;
}

TraceAndDeriv half_trace_deriv(double E, double lambda, int k) {
    if (k < -1) throw domain_error("half_trace_deriv: level must be >= -1");
    if (k == -1) return {1.0, 0.0};
    if (k == 0) return {E / 2.0, 0.5};
    double x2 = 1.0, d2 = 0.0;
    double x1 = E / 2.0, d1 = 0.5;
    double x0 = (E - lambda) / 2.0, d0 = 0.5;
    for (int i = 1; i < k; ++i) {
        double xn = 2.0 * x0 * x1 - x2;
        double dn = 2.0 * (d0 * x1 + x0 * d1) - d2;
        x2 = x1; d2 = d1;
        x1 = x0; d1 = d0;
        x0 = xn; d0 = dn;
    }
    return {x0, d0};
}

TransferMatrix transfer_matrix(double E, double lambda, int k) {
    if (k < -1) throw domain_error("transfer_matrix: level must be >= -1");
    Eigen::Matrix2d m_prev, m_cur;
    m_prev << 1.0, -lambda, 0.0, 1.0;  // M_{-1}
    if (k == -1) return {k, m_prev};
    m_cur << E, -1.0, 1.0, 0.0;        // M_0
    for (int i = 0; i < k; ++i) {
        Eigen::Matrix2d next = m_prev * m_cur;  // M_{j+1} = M_{j-1} M_j
        m_prev = m_cur;
        m_cur = next;
    }
    return {k, m_cur};
}

TraceTriple trace_triple(double E, double lambda, int k) {
    return {lambda, E, k, half_trace(E, lambda, k - 1), half_trace(E, lambda, k),
            half_trace(E, lambda, k + 1)};
}

Point3 trace_map(const Point3& p) { return {2.0 * p.x * p.y - p.z, p.x, p.y}; }

Point3 trace_map_inverse(const Point3& p) { return {p.y, p.z, 2.0 * p.y * p.z - p.x}; }

double fricke_vogt(const Point3& p) {
    return p.x * p.x + p.y * p.y + p.z * p.z - 2.0 * p.x * p.y * p.z - 1.0;
}

Point3 line_point(double E, double lambda) { return {(E - lambda) / 2.0, E / 2.0, 1.0}; }

double potential(double lambda, double omega, std::int64_t n, double alpha_value) {
    if (!(alpha_value > 0.0 && alpha_value <= 1.0))
        throw domain_error("potential: alpha_value must lie in (0, 1]");
    double r = std::fmod(static_cast<double>(n) * alpha_value + omega, 1.0);
    if (r < 0.0) r += 1.0;
    return (r >= 1.0 - alpha_value) ? lambda : 0.0;
}

double potential_approximant(double lambda, std::int64_t n, int k) {
    if (k < 0) throw domain_error("potential_approximant: level must be >= 0");
    std::int64_t den = fibonacci(k);
    std::int64_t num = fibonacci(k - 1);
    std::int64_t r = (n % den) * (num % den) % den;
    if (r < 0) r += den;
    return (r >= den - num) ? lambda : 0.0;
}

}  // namespace fibspec
