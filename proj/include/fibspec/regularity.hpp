#pragma once

#include <optional>
#include <vector>

#include "fibspec/approximants.hpp"

namespace fibspec {

/// Lower Hoelder-exponent envelope 3 log(1/alpha) / (2 log(2 lambda + 22)),
/// valid for lambda > 4.
double gamma_lower(double lambda);

/// Upper envelope 3 log(1/alpha) / (2 log((lambda-4 + sqrt((lambda-4)^2-12))/2)),
/// valid for lambda >= 8.
double gamma_upper(double lambda);

/// Finite-k lower exponent (k-3) log(1/alpha) / ((2/3)(k+1) log(2 lambda + 22) - log 4).
double gamma_k(double lambda, int k);

/// Finite-k upper exponent (k+1) log(1/alpha) / ((2/3) k log(base) - log 4)
/// with the gamma_upper base; exceeds gamma_upper and decreases toward it.
double gamma_tilde_k(double lambda, int k);

/// Largest exponent compatible with the multiplier condition
/// mu_lambda^(2 gamma) < mu0: min(1/2, log(mu0) / (2 log(mu_lambda))).
/// Equals 1/2 exactly when mu_lambda == mu0. The multiplier is an input;
/// solving for it belongs to the dynamics module.
double gamma_small(double lambda, double mu_lambda);

struct HolderBounds {
    double coupling = 0.0;
    std::optional<double> lower;       // lambda > 4
    std::optional<double> upper;       // lambda >= 8
    std::optional<double> small_coupling;  // needs mu_lambda
    struct PerK {
        int k;
        std::optional<double> gamma_k;
        std::optional<double> gamma_tilde_k;
    };
    std::vector<PerK> per_k;
};

HolderBounds holder_bounds(double lambda, std::optional<double> mu_lambda, int k_min, int k_max);

enum class EstimateSource { BandPair, GapEdge };

struct HolderEstimate {
    int k = 0;
    EstimateSource source = EstimateSource::BandPair;
    double scale = 0.0;       // |E2 - E1|
    double delta_n = 0.0;     // IDS increment across the pair
    double exponent = 0.0;    // log(delta_n) / log(scale)
    double delta_n_finite = 0.0;  // finite-level audit ratio F_{n-k}/F_n
    int audit_level = 0;
};

/// Empirical witness-pair exponents from the thinnest type-B bands.
/// The IDS increment across a type-B band of sigma_k is the exact limit
/// alpha^k of the descendant ratio F_{n-k}/F_n; the finite-n ratio at the
/// tree's deepest level is reported alongside for audit. Gap-edge rows span
/// the band together with its adjacent gaps and are informational.
/// Requires tree depth >= max(ks) + 2.
std::vector<HolderEstimate> empirical_holder(const BandTree& tree, const std::vector<int>& ks);

}  // namespace fibspec
