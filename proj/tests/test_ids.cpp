#include <doctest.h>

#include <cmath>

#include "fibspec/errors.hpp"
#include "fibspec/ids.hpp"

using namespace fibspec;

TEST_CASE("free IDS closed form") {
    CHECK(ids_free(-2.0) == 0.0);
    CHECK(ids_free(2.0) == 1.0);
    CHECK(ids_free(-5.0) == 0.0);
    CHECK(ids_free(7.0) == 1.0);
    CHECK(ids_free(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ids_free(-1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(ids_free(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("ids below and above the spectrum") {
    BandTree tree = build_band_tree(5.0, 8);
    IdsEvaluator ev(tree, 8);
    CHECK(ev(-5.0).value == 0.0);
    CHECK(ev(10.0).value == 1.0);
    CHECK(ev(-5.0).error_bound == doctest::Approx(2.0 / 34.0));
}

TEST_CASE("gap plateau at the first gap is exactly 233/610 at level 14") {
    BandTree tree = build_band_tree(5.0, 14);
    IdsEvaluator ev(tree, 14);
    CHECK(ev(2.5).value == 233.0 / 610.0);
    // plateau limit approaches alpha^2
    CHECK(std::abs(233.0 / 610.0 - constants::alpha * constants::alpha) < 1e-5);
}

TEST_CASE("ids is monotone along a fine grid") {
    BandTree tree = build_band_tree(5.0, 12);
    IdsEvaluator ev(tree, 12);
    double prev = -1.0;
    for (int i = 0; i < 10000; ++i) {
        double E = -3.0 + 11.0 * i / 9999.0;
        double v = ev(E).value;
        CHECK(v >= prev - 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("level consistency: refining by two levels moves the value by less than 2/F_n") {
    BandTree tree = build_band_tree(5.0, 14);
    for (int n : {8, 10, 12}) {
        IdsEvaluator coarse(tree, n), fine(tree, n + 2);
        double bound = 2.0 / static_cast<double>(fibonacci(n));
        for (int i = 0; i < 1000; ++i) {
            double E = -3.0 + 11.0 * i / 999.0;
            CHECK(std::abs(coarse(E).value - fine(E).value) <= bound);
        }
    }
}

TEST_CASE("near-zero coupling reproduces the free IDS") {
    IdsEvaluator ev(scan_bands(1e-6, 12));
    for (int i = 0; i <= 400; ++i) {
        double E = -1.9 + 3.8 * i / 400.0;
        CHECK(std::abs(ev(E).value - ids_free(E)) < 0.02);
    }
}

TEST_CASE("periodic eigenvalues sit at Bloch-phase band edges") {
    // the dense eigensolve returns roots of x_n = 1 up to its own precision;
    // one Newton polish onto the root removes that noise before the arccos,
    // which would otherwise amplify it by a square root
    const double lam = 5.0;
    const int n = 8;
    IdsEvaluator ev(scan_bands(lam, n));
    for (double e : periodic_hamiltonian_eigs(lam, n)) {
        double x = e;
        for (int it = 0; it < 3; ++it) {
            auto [v, d] = half_trace_deriv(x, lam, n);
            if (d == 0.0) break;
            x -= (v - 1.0) / d;
        }
        CHECK(std::abs(x - e) <= 1e-7 * (1.0 + std::abs(e)));  // eigensolve was already close
        double frac = std::fmod(ev(x).value * fibonacci(n), 1.0);
        CHECK(std::min(frac, 1.0 - frac) <= 1e-6);
    }
}

TEST_CASE("gap_plateau rationals") {
    BandTree tree = build_band_tree(5.0, 14);

    GapRecord g2 = gap_plateau(tree, 2, 0);
    CHECK(g2.plateau_num == 1);
    CHECK(g2.plateau_den == 2);
    CHECK(g2.lo == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(g2.hi == doctest::Approx(5.0).epsilon(1e-10));

    // the central gap refined at level 14 separates bands 232 | 233; its
    // level-14 endpoints pull inward from the level-2 ones (band edges of a
    // coarse level need not persist in deeper approximants)
    GapRecord g14 = gap_plateau(tree, 14, 232);
    CHECK(g14.plateau_num == 233);
    CHECK(g14.plateau_den == 610);
    CHECK(g14.lo < 2.5);
    CHECK(g14.hi > 2.5);
    // its left end is the rightmost deep band edge inside the level-2 band
    // below, its right end the leftmost one inside the level-1 band above
    CHECK(g14.lo > (5.0 - std::sqrt(41.0)) / 2.0);
    CHECK(g14.lo <= 0.0);
    CHECK(g14.hi >= 3.0);
    CHECK(g14.hi <= 5.0);

    GapRecord left = gap_plateau(tree, 14, -1);
    CHECK(left.plateau_num == 0);
    CHECK(left.plateau_den == 610);

    CHECK_THROWS_AS(gap_plateau(tree, 2, 7), domain_error);
    CHECK_THROWS_AS(gap_plateau(tree, 15, 0), domain_error);
}

TEST_CASE("gap_plateau rejects touching bands") {
    // at zero coupling every interior gap is closed
    PeriodicSpectrum sp = scan_bands(0.0, 2);
    BandTree fake;
    fake.coupling = 0.0;
    fake.max_level = 2;
    fake.levels.resize(3);
    fake.levels[2] = sp.bands;
    CHECK_THROWS_AS(gap_plateau(fake, 2, 0), domain_error);
}

TEST_CASE("psi endpoints and the weak-coupling identity") {
    BandTree tree = build_band_tree(5.0, 10);
    IdsEvaluator ev(tree, 10);
    double below = tree.levels[10].front().lo - 1.0;
    double above = tree.levels[10].back().hi + 1.0;
    CHECK(psi(ev, below) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(psi(ev, above) == doctest::Approx(2.0).epsilon(1e-14));

    // psi is increasing in N, hence in E
    double prev = -2.1;
    for (int i = 0; i <= 500; ++i) {
        double E = -3.0 + 11.0 * i / 500.0;
        double p = psi(ev, E);
        CHECK(p >= prev - 1e-12);
        CHECK(p >= -2.0 - 1e-12);
        CHECK(p <= 2.0 + 1e-12);
        prev = p;
    }

    // psi approaches the identity on [-2,2] as the coupling vanishes
    IdsEvaluator weak(scan_bands(1e-6, 12));
    for (int i = 0; i <= 100; ++i) {
        double E = -1.9 + 3.8 * i / 100.0;
        CHECK(std::abs(psi(weak, E) - E) < 0.05);
    }
}
