#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace fibspec {

namespace constants {
/// Inverse golden mean, the rotation number of the potential sequence.
inline const double alpha = 0.61803398874989484820;
/// Largest eigenvalue of the doubled trace map at the corner (1,1,1).
inline const double mu0 = 6.85410196624968454461;
/// Golden mean; eigenvalue of the torus automorphism [[1,1],[1,0]].
inline const double mu = 1.61803398874989484820;
/// log(1/alpha), the entropy-like constant entering every exponent formula.
inline const double log_inv_alpha = 0.48121182505960344750;
}  // namespace constants

/// F_{-1}=0, F_0=1, F_k = F_{k-1} + F_{k-2}. Throws domain_error for k < -1
/// or k > 90 (past 64-bit range).
std::int64_t fibonacci(int k);

struct Point3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Half-trace x_k(E, lambda) of the k-th transfer matrix, computed by the
/// scalar triple recursion x_{k+1} = 2 x_k x_{k-1} - x_{k-2} in O(k).
/// Seeds: x_{-1} = 1, x_0 = E/2, x_1 = (E - lambda)/2.
double half_trace(double E, double lambda, int k);

/// Half-trace together with its energy derivative (forward-mode recursion).
struct TraceAndDeriv {
    double value;
    double deriv;
};
TraceAndDeriv half_trace_deriv(double E, double lambda, int k);

struct TransferMatrix {
    int level;
    Eigen::Matrix2d entries;
};

/// M_k via the matrix recursion M_k = M_{k-2} M_{k-1} with
/// M_{-1} = [[1,-lambda],[0,1]], M_0 = [[E,-1],[1,0]].
TransferMatrix transfer_matrix(double E, double lambda, int k);

/// State of the triple recursion at fixed (E, lambda): (x_{k-1}, x_k, x_{k+1}).
struct TraceTriple {
    double coupling;
    double energy;
    int level;   // index of the middle entry
    double x_prev, x_mid, x_next;
};
TraceTriple trace_triple(double E, double lambda, int k);

/// T(x,y,z) = (2xy - z, x, y).
Point3 trace_map(const Point3& p);
/// Inverse (y, z, 2yz - x).
Point3 trace_map_inverse(const Point3& p);

/// Fricke-Vogt invariant G(x,y,z) = x^2 + y^2 + z^2 - 2xyz - 1.
/// p lies on the invariant surface of coupling lambda iff G(p) = lambda^2/4.
double fricke_vogt(const Point3& p);

/// Spectral line embedding L_lambda(E) = ((E - lambda)/2, E/2, 1).
/// Affine, contracts Euclidean distance by exactly 1/sqrt(2).
Point3 line_point(double E, double lambda);

/// Potential value lambda * chi_[1-a,1)(n*a + omega mod 1) with a = alpha_value.
/// alpha_value must lie in (0, 1].
double potential(double lambda, double omega, std::int64_t n,
                 double alpha_value = constants::alpha);

/// Periodic-approximant potential with alpha = F_{k-1}/F_k and omega = 0,
/// reduced in exact integer arithmetic so interval endpoints never
/// misclassify. Period is F_k.
double potential_approximant(double lambda, std::int64_t n, int k);

}  // namespace fibspec
