#include <doctest.h>

#include <cmath>

#include "fibspec/dynamics.hpp"
#include "fibspec/errors.hpp"
#include "fibspec/ids.hpp"
#include "fibspec/regularity.hpp"

using namespace fibspec;

TEST_CASE("closed-form exponent envelopes") {
    // frozen against 40-digit evaluation of the closed forms
    CHECK(gamma_lower(8.0) == doctest::Approx(0.19843316581227022).epsilon(1e-14));
    CHECK(gamma_lower(100.0) == doctest::Approx(0.13360370915563751).epsilon(1e-14));
    CHECK(gamma_upper(8.0) == doctest::Approx(0.65702681922891362).epsilon(1e-14));
    CHECK(gamma_upper(100.0) == doctest::Approx(0.15815385129213952).epsilon(1e-14));
    CHECK(gamma_k(5.0, 6) == doctest::Approx(0.09762776910430556).epsilon(1e-14));
    CHECK(gamma_tilde_k(8.0, 7) == doctest::Approx(1.0291751842937508).epsilon(1e-14));

    CHECK_THROWS_AS(gamma_lower(4.0), domain_error);
    CHECK_THROWS_AS(gamma_upper(7.9), domain_error);
    CHECK_THROWS_AS(gamma_k(5.0, 2), domain_error);
    CHECK_THROWS_AS(gamma_tilde_k(8.0, 3), domain_error);
}

TEST_CASE("envelope limits and orderings") {
    // gamma_k increases to gamma_lower
    for (double lam : {5.0, 8.0, 100.0}) {
        double gl = gamma_lower(lam);
        double prev = 0.0;
        for (int k = 4; k <= 400; k *= 2) {
            double g = gamma_k(lam, k);
            CHECK(g > prev);
            CHECK(g < gl);
            prev = g;
        }
        CHECK(gamma_k(lam, 100000) == doctest::Approx(gl).epsilon(1e-4));
    }
    // gamma_tilde_k decreases to gamma_upper from above
    for (double lam : {8.0, 16.0, 100.0}) {
        double gu = gamma_upper(lam);
        double prev = 1e9;
        for (int k = 4; k <= 400; k *= 2) {
            double g = gamma_tilde_k(lam, k);
            CHECK(g < prev);
            CHECK(g > gu);
            prev = g;
        }
    }
    for (double lam : {8.0, 16.0, 100.0}) CHECK(gamma_upper(lam) > gamma_lower(lam));

    // both closed forms decrease in the coupling
    const double lams[] = {8.0, 12.0, 20.0, 50.0, 100.0};
    for (int i = 1; i < 5; ++i) {
        CHECK(gamma_lower(lams[i]) < gamma_lower(lams[i - 1]));
        CHECK(gamma_upper(lams[i]) < gamma_upper(lams[i - 1]));
    }

    // large-coupling asymptotics
    double lam = 1e4;
    double ratio = gamma_lower(lam) * 2.0 * std::log(lam) / (3.0 * constants::log_inv_alpha);
    CHECK(ratio > 0.85);
    CHECK(ratio < 1.0);
}

TEST_CASE("gamma_small and the multiplier condition") {
    CHECK(gamma_small(0.0, constants::mu0) == 0.5);
    CHECK_THROWS_AS(gamma_small(0.1, 1.0), domain_error);
    CHECK_THROWS_AS(gamma_small(0.1, 0.5), domain_error);

    double prev = 0.0;
    for (double lam : {0.5, 0.2, 0.1, 0.05}) {
        double mu = per2_solve(lam).mu_u;
        double g = gamma_small(lam, mu);
        CHECK(g < 0.5);
        CHECK(g > prev);  // increases toward 1/2 as the coupling decreases
        // the chosen exponent satisfies the defining inequality with no slack above
        CHECK(std::pow(mu, 2.0 * g) <= constants::mu0 * (1.0 + 1e-12));
        CHECK(std::pow(mu, 2.0 * (g + 1e-6)) > constants::mu0);
        prev = g;
    }

    // frozen solves
    CHECK(gamma_small(0.5, per2_solve(0.5).mu_u) ==
          doctest::Approx(0.49622363811047578).epsilon(1e-10));
    CHECK(gamma_small(0.05, per2_solve(0.05).mu_u) ==
          doctest::Approx(0.49996128701649353).epsilon(1e-10));
}

TEST_CASE("holder_bounds assembly") {
    HolderBounds hb = holder_bounds(8.0, std::nullopt, 4, 6);
    REQUIRE(hb.lower.has_value());
    REQUIRE(hb.upper.has_value());
    CHECK(!hb.small_coupling.has_value());
    CHECK(*hb.lower < *hb.upper);
    REQUIRE(hb.per_k.size() == 3);
    CHECK(hb.per_k[0].k == 4);
    CHECK(hb.per_k[0].gamma_tilde_k.has_value());

    HolderBounds small = holder_bounds(0.2, per2_solve(0.2).mu_u, 4, 4);
    CHECK(!small.lower.has_value());
    REQUIRE(small.small_coupling.has_value());
    CHECK(*small.small_coupling < 0.5);
}

TEST_CASE("empirical exponents honor the finite-k envelope") {
    for (double lam : {8.0, 16.0, 32.0}) {
        BandTree tree = build_band_tree(lam, 12);
        auto rows = empirical_holder(tree, {4, 7, 10});
        double gl = gamma_lower(lam);
        for (const auto& h : rows) {
            if (h.source != EstimateSource::BandPair) continue;
            double gt = gamma_tilde_k(lam, h.k);
            CHECK(h.exponent >= gl * (1.0 - 1e-9));
            CHECK(h.exponent <= gt * (1.0 + 1e-9));
        }
    }
    {
        BandTree tree = build_band_tree(100.0, 12);
        auto rows = empirical_holder(tree, {7, 10});
        for (const auto& h : rows) {
            if (h.source != EstimateSource::BandPair) continue;
            CHECK(h.exponent >= gamma_lower(100.0));
            CHECK(h.exponent <= gamma_tilde_k(100.0, h.k));
        }
    }
}

TEST_CASE("empirical rows carry consistent data") {
    BandTree tree = build_band_tree(8.0, 12);
    auto rows = empirical_holder(tree, {4, 7});
    REQUIRE(rows.size() >= 4);  // band_pair + gap_edge per k
    for (const auto& h : rows) {
        CHECK(h.scale > 0.0);
        CHECK(h.scale < 1.0);
        CHECK(h.delta_n > 0.0);
        CHECK(h.delta_n < 1.0);
        CHECK(h.exponent > 0.0);
        // the exact limit and the finite-level audit ratio stay close
        CHECK(h.delta_n_finite == doctest::Approx(h.delta_n).epsilon(2e-2));
        if (h.source == EstimateSource::BandPair) {
            const Band& thin = thinnest_band(tree, h.k);
            CHECK(h.scale == thin.width());
            CHECK(h.delta_n == doctest::Approx(std::pow(constants::alpha, h.k)).epsilon(1e-14));
        } else {
            CHECK(h.scale >= thinnest_band(tree, h.k).width());
        }
    }
    CHECK_THROWS_AS(empirical_holder(tree, {11}), domain_error);
}

TEST_CASE("the band-pair increment equals the finite-level descendant ratio") {
    // the IDS increment across the thinnest type-B band, evaluated from the
    // deep level itself, reproduces F_{n-k}/F_n exactly
    BandTree tree = build_band_tree(8.0, 12);
    IdsEvaluator ev(tree, 12);
    for (int k : {4, 7}) {
        const Band& thin = thinnest_band(tree, k);
        double delta = ev(thin.hi).value - ev(thin.lo).value;
        double expect = static_cast<double>(fibonacci(12 - k)) / static_cast<double>(fibonacci(12));
        CHECK(delta == doctest::Approx(expect).epsilon(1e-12));
    }
}
