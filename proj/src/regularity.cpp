#include "fibspec/regularity.hpp"

#include <cmath>

#include "fibspec/errors.hpp"

namespace fibspec {

namespace {

double upper_base(double lambda) {
    double t = lambda - 4.0;
    return (t + std::sqrt(t * t - 12.0)) / 2.0;
}

}  // namespace

double gamma_lower(double lambda) {
    if (!(lambda > 4.0)) throw domain_error("gamma_lower requires lambda > 4");
    return 3.0 * constants::log_inv_alpha / (2.0 * std::log(2.0 * lambda + 22.0));
}

double gamma_upper(double lambda) {
    if (!(lambda >= 8.0)) throw domain_error("gamma_upper requires lambda >= 8");
    return 3.0 * constants::log_inv_alpha / (2.0 * std::log(upper_base(lambda)));
}

double gamma_k(double lambda, int k) {
    if (!(lambda > 4.0)) throw domain_error("gamma_k requires lambda > 4");
    if (k < 3) throw domain_error("gamma_k requires k >= 3");
    return (k - 3) * constants::log_inv_alpha /
           (2.0 / 3.0 * (k + 1) * std::log(2.0 * lambda + 22.0) - std::log(4.0));
}

double gamma_tilde_k(double lambda, int k) {
    if (!(lambda >= 8.0)) throw domain_error("gamma_tilde_k requires lambda >= 8");
    if (k < 4) throw domain_error("gamma_tilde_k requires k >= 4");
    return (k + 1) * constants::log_inv_alpha /
           (2.0 / 3.0 * k * std::log(upper_base(lambda)) - std::log(4.0));
}

double gamma_small(double lambda, double mu_lambda) {
    (void)lambda;
    if (!(mu_lambda > 1.0)) throw domain_error("gamma_small requires mu_lambda > 1");
    return std::min(0.5, std::log(constants::mu0) / (2.0 * std::log(mu_lambda)));
}

HolderBounds holder_bounds(double lambda, std::optional<double> mu_lambda, int k_min, int k_max) {
    HolderBounds b;
    b.coupling = lambda;
    if (lambda > 4.0) b.lower = gamma_lower(lambda);
    if (lambda >= 8.0) b.upper = gamma_upper(lambda);
    if (mu_lambda) b.small_coupling = gamma_small(lambda, *mu_lambda);
    for (int k = k_min; k <= k_max; ++k) {
        HolderBounds::PerK p{k, std::nullopt, std::nullopt};
        if (lambda > 4.0 && k >= 3) p.gamma_k = gamma_k(lambda, k);
        if (lambda >= 8.0 && k >= 4) p.gamma_tilde_k = gamma_tilde_k(lambda, k);
        b.per_k.push_back(p);
    }
    return b;
}

std::vector<HolderEstimate> empirical_holder(const BandTree& tree, const std::vector<int>& ks) {
    std::vector<HolderEstimate> out;
    const int n = tree.max_level;
    const double Fn = static_cast<double>(fibonacci(n));
    for (int k : ks) {
        if (k + 2 > tree.max_level)
            throw domain_error("empirical_holder: tree depth must be at least k + 2");
        const Band& thin = thinnest_band(tree, k);

        HolderEstimate e;
        e.k = k;
        e.source = EstimateSource::BandPair;
        e.scale = thin.width();
        e.delta_n = std::pow(constants::alpha, k);  // limit of F_{n-k}/F_n
        e.exponent = std::log(e.delta_n) / std::log(e.scale);
        e.delta_n_finite = static_cast<double>(fibonacci(n - k)) / Fn;
        e.audit_level = n;
        out.push_back(e);

        // informational row spanning the adjacent gaps as well
        const auto& level = tree.levels[k];
        double lo = thin.lo, hi = thin.hi;
        if (thin.index > 0) lo = level[thin.index - 1].hi;
        if (thin.index + 1 < static_cast<int>(level.size())) hi = level[thin.index + 1].lo;
        if (lo < thin.lo || hi > thin.hi) {
            HolderEstimate g = e;
            g.source = EstimateSource::GapEdge;
            g.scale = hi - lo;
            g.exponent = std::log(g.delta_n) / std::log(g.scale);
            out.push_back(g);
        }
    }
    return out;
}

}  // namespace fibspec
