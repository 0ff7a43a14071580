#include "fibspec/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "fibspec/approximants.hpp"
#include "fibspec/dynamics.hpp"
#include "fibspec/errors.hpp"
#include "fibspec/export.hpp"
#include "fibspec/ids.hpp"
#include "fibspec/regularity.hpp"
#include "fibspec/trace_core.hpp"

namespace fibspec {

namespace {

using clock_type = std::chrono::steady_clock;

struct Checker {
    std::vector<SubCheck> checks;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }
    template <typename T>
    static std::string str(const T& v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }
    static std::string num(double v) { return format_double(v); }
};

CriterionResult make_result(int id, const std::string& title, Checker&& c, double secs) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    r.seconds = secs;
    r.subchecks = std::move(c.checks);
    r.passed = std::all_of(r.subchecks.begin(), r.subchecks.end(),
                           [](const SubCheck& s) { return s.passed; });
    return r;
}

// --- criterion 1: band combinatorics --------------------------------------

CriterionResult criterion_band_counts() {
    auto t0 = clock_type::now();
    Checker c;
    // type-count table for levels 0..6
    const int table[7][2] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}};
    for (double lam : {4.5, 5.0, 8.0}) {
        BandTree tree = build_band_tree(lam, 14);
        bool counts_ok = true, table_ok = true;
        for (int k = 0; k <= 14; ++k) {
            std::int64_t na = 0, nb = 0;
            for (const Band& b : tree.levels[k]) (b.kind == BandKind::A ? na : nb)++;
            std::int64_t ea = (k >= 2) ? fibonacci(k - 2) : table[k][0];
            std::int64_t eb = (k >= 2) ? fibonacci(k - 1) : table[k][1];
            if (na + nb != fibonacci(k) || na != ea || nb != eb) counts_ok = false;
            if (k <= 6 && (na != table[k][0] || nb != table[k][1])) table_ok = false;
        }
        c.add("counts F_k with split F_{k-2}/F_{k-1}, lambda=" + Checker::str(lam), counts_ok);
        c.add("level table rows k=0..6, lambda=" + Checker::str(lam), table_ok);
    }
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.add("runtime < 30 s", secs < 30.0, Checker::num(secs) + " s");
    return make_result(1, "band combinatorics and type counts", std::move(c), secs);
}

// --- criterion 2: closed-form endpoints ------------------------------------

CriterionResult criterion_level2_endpoints() {
    auto t0 = clock_type::now();
    Checker c;
    BandTree tree = build_band_tree(5.0, 2);
    const double s41 = std::sqrt(41.0);
    const double expect[2][2] = {{(5.0 - s41) / 2.0, 0.0}, {5.0, (5.0 + s41) / 2.0}};
    const BandKind kinds[2] = {BandKind::B, BandKind::A};
    bool ok = tree.levels[2].size() == 2;
    for (int i = 0; ok && i < 2; ++i) {
        const Band& b = tree.levels[2][i];
        ok = std::abs(b.lo - expect[i][0]) <= 1e-10 && std::abs(b.hi - expect[i][1]) <= 1e-10 &&
             b.kind == kinds[i];
    }
    std::string detail;
    if (tree.levels[2].size() == 2)
        detail = "[" + Checker::num(tree.levels[2][0].lo) + ", " +
                 Checker::num(tree.levels[2][0].hi) + "] and [" +
                 Checker::num(tree.levels[2][1].lo) + ", " + Checker::num(tree.levels[2][1].hi) + "]";
    c.add("lambda=5 level-2 bands match [(5-sqrt41)/2, 0], [5, (5+sqrt41)/2] within 1e-10", ok,
          detail);
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(2, "closed-form level-2 endpoints", std::move(c), secs);
}

// --- criterion 3: hierarchy pattern + descendant counts ---------------------

CriterionResult criterion_hierarchy() {
    auto t0 = clock_type::now();
    Checker c;
    const int depth = 12;
    BandTree tree = build_band_tree(5.0, depth);
    bool pattern_ok = true, contain_ok = true;
    for (int k = 0; k + 2 <= depth; ++k) {
        for (const Band& b : tree.levels[k]) {
            int at1 = 0, at2 = 0;
            bool kinds_ok = true;
            for (auto [lvl, idx] : b.children) {
                const Band& ch = tree.band(lvl, idx);
                if (!(b.lo < ch.lo && ch.hi < b.hi)) contain_ok = false;
                if (lvl == k + 1) {
                    ++at1;
                    kinds_ok = kinds_ok && ch.kind == BandKind::A;
                } else if (lvl == k + 2) {
                    ++at2;
                    kinds_ok = kinds_ok && ch.kind == BandKind::B;
                } else {
                    kinds_ok = false;
                }
            }
            bool expect = (b.kind == BandKind::A) ? (at1 == 0 && at2 == 1) : (at1 == 1 && at2 == 2);
            if (!expect || !kinds_ok) pattern_ok = false;
        }
    }
    c.add("containment pattern: A -> 1 child at +2, B -> 1 at +1 and 2 at +2 (lambda=5, k <= 12)",
          pattern_ok);
    c.add("children strictly inside parents", contain_ok);
    bool l2_ok = true;
    for (int k = 0; k + 2 <= depth; ++k)
        for (const Band& b : tree.levels[k]) {
            std::int64_t expect =
                (b.kind == BandKind::A) ? fibonacci(depth - k - 2) : fibonacci(depth - k);
            if (tree.descendant_count(b, depth) != expect) l2_ok = false;
        }
    c.add("descendant counts at level 12 exact (F_{n-k-2} for A, F_{n-k} for B)", l2_ok);
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(3, "containment hierarchy and descendant counts", std::move(c), secs);
}

// --- criterion 4: band-length bounds ----------------------------------------

CriterionResult criterion_band_lengths() {
    auto t0 = clock_type::now();
    Checker c;
    for (double lam : {5.0, 8.0, 12.0}) {
        BandTree tree = build_band_tree(lam, 12);
        bool ok = true;
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 3; k <= 12; ++k) {
            double bound = 4.0 / std::pow(2.0 * lam + 22.0, 2.0 * k / 3.0);
            for (const Band& b : tree.levels[k]) {
                ok = ok && b.width() >= bound;
                worst = std::min(worst, b.width() / bound);
            }
        }
        c.add("lower bound 4/(2l+22)^(2k/3) for all bands, lambda=" + Checker::str(lam), ok,
              "min width/bound = " + Checker::num(worst));
        if (lam >= 8.0) {
            for (int k : {4, 7, 10}) {
                const Band& thin = thinnest_band(tree, k);
                double base = ((lam - 4.0) + std::sqrt((lam - 4.0) * (lam - 4.0) - 12.0)) / 2.0;
                double bound = 4.0 / std::pow(base, 2.0 * k / 3.0);
                c.add("thinnest B band upper bound, lambda=" + Checker::str(lam) +
                          " k=" + Checker::str(k),
                      thin.width() <= bound,
                      Checker::num(thin.width()) + " <= " + Checker::num(bound));
            }
        }
    }
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(4, "band-length bounds", std::move(c), secs);
}

// --- criterion 5: periodic-operator oracle ----------------------------------

CriterionResult criterion_oracle() {
    auto t0 = clock_type::now();
    Checker c;
    for (double lam : {0.2, 1.0, 5.0}) {
        bool ok = true;
        std::string fail;
        for (int n = 0; n <= 10; ++n) {
            PeriodicSpectrum sp = scan_bands(lam, n);
            std::vector<double> eigs = periodic_hamiltonian_eigs(lam, n);
            if (eigs.size() != sp.bands.size()) {
                ok = false;
                fail = "count mismatch at n=" + Checker::str(n);
                break;
            }
            for (std::size_t i = 0; i < eigs.size(); ++i) {
                double tol = 1e-8 * (1.0 + std::abs(eigs[i]));
                if (!(eigs[i] >= sp.bands[i].lo - tol && eigs[i] <= sp.bands[i].hi + tol)) {
                    ok = false;
                    fail = "eigenvalue " + Checker::str(i) + " outside band at n=" + Checker::str(n);
                }
            }
        }
        c.add("one eigenvalue per closed band, lambda=" + Checker::str(lam) + ", n <= 10", ok, fail);
    }
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.add("runtime < 60 s", secs < 60.0, Checker::num(secs) + " s");
    return make_result(5, "dense periodic-operator oracle", std::move(c), secs);
}

// --- criterion 6: IDS plateau -------------------------------------------------

CriterionResult criterion_ids_plateau() {
    auto t0 = clock_type::now();
    Checker c;
    BandTree tree = build_band_tree(5.0, 14);
    IdsEvaluator ev(tree, 14);
    IdsSample s = ev(2.5);
    double expect = 233.0 / 610.0;
    c.add("ids(5, 2.5, 14) = 233/610 exactly", s.value == expect, Checker::num(s.value));
    double a2 = constants::alpha * constants::alpha;
    c.add("|233/610 - alpha^2| < 1e-5", std::abs(expect - a2) < 1e-5,
          Checker::num(std::abs(expect - a2)));
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(6, "IDS gap plateau at lambda=5", std::move(c), secs);
}

// --- criterion 7: Hoelder envelope -------------------------------------------

CriterionResult criterion_holder_envelope() {
    auto t0 = clock_type::now();
    Checker c;
    for (double lam : {8.0, 16.0, 32.0, 100.0}) {
        BandTree tree = build_band_tree(lam, 12);
        auto rows = empirical_holder(tree, {4, 7, 10});
        double gl = gamma_lower(lam);
        for (const HolderEstimate& h : rows) {
            if (h.source != EstimateSource::BandPair) continue;
            double gt = gamma_tilde_k(lam, h.k);
            bool ok = gl <= h.exponent && h.exponent <= gt;
            c.add("exponent in [gamma_lower, gamma_tilde_k], lambda=" + Checker::str(lam) +
                      " k=" + Checker::str(h.k),
                  ok,
                  Checker::num(h.exponent) + " vs [" + Checker::num(gl) + ", " + Checker::num(gt) +
                      "]");
        }
    }
    struct Spot {
        const char* name;
        double got, expect;
    };
    const Spot spots[] = {{"gamma_lower(8)", gamma_lower(8.0), 0.198432},
                          {"gamma_upper(8)", gamma_upper(8.0), 0.657047},
                          {"gamma_lower(100)", gamma_lower(100.0), 0.133604}};
    for (const Spot& s : spots)
        c.add(std::string("spot ") + s.name + " = " + Checker::num(s.expect) + " +- 1e-5",
              std::abs(s.got - s.expect) <= 1e-5, "computed " + Checker::num(s.got));
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(7, "Hoelder exponent envelope", std::move(c), secs);
}

// --- criterion 8: large-coupling asymptotics ---------------------------------

CriterionResult criterion_asymptotics() {
    auto t0 = clock_type::now();
    Checker c;
    double lam = 1e4;
    double ratio = gamma_lower(lam) * 2.0 * std::log(lam) / (3.0 * constants::log_inv_alpha);
    c.add("gamma_lower(1e4) * 2 ln(lambda) / (3 ln(1/alpha)) in [0.85, 1]",
          ratio >= 0.85 && ratio <= 1.0, Checker::num(ratio));
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(8, "large-coupling asymptotics", std::move(c), secs);
}

// --- criterion 9: dynamics constants -----------------------------------------

CriterionResult criterion_dynamics_constants() {
    auto t0 = clock_type::now();
    Checker c;
    Eigen::Matrix3d J = dt2_jacobian({1.0, 1.0, 1.0});
    Eigen::Matrix3d expect;
    expect << 6, 3, -2, 2, 2, -1, 1, 0, 0;
    c.add("DT^2(1,1,1) equals the displayed integer matrix exactly",
          (J.array() == expect.array()).all());

    Eigen::EigenSolver<Eigen::Matrix3d> es(J);
    std::vector<double> eig;
    for (int i = 0; i < 3; ++i) eig.push_back(es.eigenvalues()(i).real());
    std::sort(eig.begin(), eig.end());
    double s5 = std::sqrt(5.0);
    double lo = (7.0 - 3.0 * s5) / 2.0, hi = (7.0 + 3.0 * s5) / 2.0;
    bool eig_ok = std::abs(eig[0] - lo) <= 1e-10 && std::abs(eig[1] - 1.0) <= 1e-10 &&
                  std::abs(eig[2] - hi) <= 1e-10;
    double imag_max = 0.0;
    for (int i = 0; i < 3; ++i) imag_max = std::max(imag_max, std::abs(es.eigenvalues()(i).imag()));
    c.add("eigenvalues {1, (7 +- 3 sqrt 5)/2} within 1e-10", eig_ok && imag_max <= 1e-10,
          Checker::num(eig[0]) + ", " + Checker::num(eig[1]) + ", " + Checker::num(eig[2]));

    double h1 = 1e-4;
    double fd1 = (unstable_multiplier(1.0 + h1) - unstable_multiplier(1.0 - h1)) / (2.0 * h1);
    c.add("first central difference of lambda^u at x=1 is 0 within 1e-6", std::abs(fd1) <= 1e-6,
          Checker::num(fd1));
    double h2 = 1e-3;
    double fd2 = (unstable_multiplier(1.0 + h2) - 2.0 * unstable_multiplier(1.0) +
                  unstable_multiplier(1.0 - h2)) /
                 (h2 * h2);
    c.add("second central difference at x=1 equals 16.247987 within 1e-3",
          std::abs(fd2 - 16.247987) <= 1e-3, "computed " + Checker::num(fd2));
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(9, "trace-map dynamics constants", std::move(c), secs);
}

// --- criterion 10: small-coupling multiplier condition ------------------------

CriterionResult criterion_small_coupling() {
    auto t0 = clock_type::now();
    Checker c;
    const double lams[] = {0.05, 0.1, 0.2, 0.5};
    double gs[4];
    bool mu_ok = true, gs_ok = true;
    for (int i = 0; i < 4; ++i) {
        Period2Point p = per2_solve(lams[i]);
        mu_ok = mu_ok && p.mu_u > constants::mu0;
        gs[i] = gamma_small(lams[i], p.mu_u);
        gs_ok = gs_ok && gs[i] < 0.5;
    }
    c.add("mu_u > mu0 for lambda in {0.05, 0.1, 0.2, 0.5}", mu_ok);
    c.add("gamma_small < 1/2 for all four", gs_ok,
          Checker::num(gs[0]) + ", " + Checker::num(gs[1]) + ", " + Checker::num(gs[2]) + ", " +
              Checker::num(gs[3]));
    c.add("gamma_small strictly increases toward 1/2 as lambda decreases",
          gs[3] < gs[2] && gs[2] < gs[1] && gs[1] < gs[0] && gs[0] < 0.5);
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(10, "period-2 multiplier condition", std::move(c), secs);
}

// --- criterion 11: semiconjugacy ----------------------------------------------

CriterionResult criterion_semiconjugacy() {
    auto t0 = clock_type::now();
    Checker c;
    const int N = 200;
    double worst = 0.0, worst_g = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            TorusPoint t{static_cast<double>(i) / N, static_cast<double>(j) / N};
            Point3 a = semiconjugacy(cat_map(t));
            Point3 b = trace_map(semiconjugacy(t));
            worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
            worst_g = std::max(worst_g, std::abs(fricke_vogt(semiconjugacy(t))));
        }
    }
    c.add("max |F(A(t)) - T(F(t))| < 1e-10 on the 200x200 grid", worst < 1e-10, Checker::num(worst));
    c.add("max |G(F(t))| < 1e-10 (image lies on the zero-coupling surface)", worst_g < 1e-10,
          Checker::num(worst_g));
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(11, "torus semiconjugacy", std::move(c), secs);
}

// --- criterion 12: free-IDS oracle ---------------------------------------------

CriterionResult criterion_free_ids() {
    auto t0 = clock_type::now();
    Checker c;

    {  // (a) Lipschitz away from the edges
        const double C = 1.0 / (M_PI * std::sqrt(1.0 - 0.95 * 0.95));
        const int n = 401;
        std::vector<double> e(n), v(n);
        for (int i = 0; i < n; ++i) {
            e[i] = -1.9 + 3.8 * i / (n - 1);
            v[i] = ids_free(e[i]);
        }
        bool ok = true;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(v[j] - v[i]) > C * std::abs(e[j] - e[i])) ok = false;
        c.add("(a) Lipschitz on [-1.9, 1.9] with C = 1/(pi sqrt(1 - 0.95^2))", ok);
    }
    {  // (b) global 1/2-Hoelder for pairs up to unit separation
        const double C = std::sqrt(2.0) / M_PI;
        const int n = 401;
        std::vector<double> e(n), v(n);
        for (int i = 0; i < n; ++i) {
            e[i] = -2.0 + 4.0 * i / (n - 1);
            v[i] = ids_free(e[i]);
        }
        double max_ratio = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double de = e[j] - e[i];
                if (de <= 0.0 || de > 1.0) continue;
                max_ratio = std::max(max_ratio, std::abs(v[j] - v[i]) / std::sqrt(de));
            }
        c.add("(b) 1/2-Hoelder with C = sqrt(2)/pi and 10% margin",
              max_ratio <= C && max_ratio <= C / 1.1,
              "max ratio " + Checker::num(max_ratio) + " vs C = " + Checker::num(C));
    }
    {  // (d) square-root lower bounds at both spectrum edges
        bool ok_lo = true, ok_hi = true;
        for (int i = 1; i < 500; ++i) {
            double el = -2.0 + 0.5 * i / 500.0;  // (-2, -1.5)
            if (ids_free(el) < 0.2 * std::sqrt(el + 2.0)) ok_lo = false;
            double eh = 2.0 - 0.5 * i / 500.0;   // (1.5, 2)
            if (1.0 - ids_free(eh) < 0.2 * std::sqrt(2.0 - eh)) ok_hi = false;
        }
        c.add("(d) |N0(-2) - N0(E)| >= 0.2 |E+2|^(1/2) on (-2, -1.5)", ok_lo);
        c.add("(d) |N0(2) - N0(E)| >= 0.2 |E-2|^(1/2) on (1.5, 2)", ok_hi);
    }
    {
        const double ev[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
        const double nv[5] = {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};
        bool ok = true;
        for (int i = 0; i < 5; ++i)
            if (std::abs(ids_free(ev[i]) - nv[i]) > 1e-12) ok = false;
        c.add("spot values {0, 1/3, 1/2, 2/3, 1} at E in {-2, -1, 0, 1, 2} within 1e-12", ok);
    }
    double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    return make_result(12, "free-IDS regularity oracle", std::move(c), secs);
}

}  // namespace

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return criterion_band_counts();
        case 2: return criterion_level2_endpoints();
        case 3: return criterion_hierarchy();
        case 4: return criterion_band_lengths();
        case 5: return criterion_oracle();
        case 6: return criterion_ids_plateau();
        case 7: return criterion_holder_envelope();
        case 8: return criterion_asymptotics();
        case 9: return criterion_dynamics_constants();
        case 10: return criterion_small_coupling();
        case 11: return criterion_semiconjugacy();
        case 12: return criterion_free_ids();
        default: throw domain_error("criterion id must be 1..12");
    }
}

std::vector<CriterionResult> run_all_criteria() {
    std::vector<CriterionResult> out;
    for (int i = 1; i <= criterion_count; ++i) out.push_back(run_criterion(i));
    return out;
}

std::vector<SubCheck> run_property_sweeps(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> energy(-3.0, 9.0);
    std::uniform_real_distribution<double> coupling(0.0, 6.0);
    std::uniform_int_distribution<int> level(-1, 25);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);

    std::vector<SubCheck> out;
    {
        bool ok = true;
        for (int i = 0; i < 1000; ++i) {
            double E = energy(rng), lam = coupling(rng);
            int k = level(rng);
            double a = half_trace(E, lam, k);
            double b = transfer_matrix(E, lam, k).entries.trace() / 2.0;
            if (!std::isfinite(b) || std::abs(b) > 10.0) continue;  // off-spectrum blow-up
            if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(b))) ok = false;
        }
        out.push_back({"half_trace equals tr(transfer_matrix)/2 (1000 samples)", ok, ""});
    }
    {
        bool ok = true;
        for (int i = 0; i < 1000; ++i) {
            Point3 p{coord(rng), coord(rng), coord(rng)};
            double g = fricke_vogt(p);
            if (g > 50.0) continue;
            double g2 = fricke_vogt(trace_map(p));
            if (std::abs(g2 - g) > 1e-8 * (1.0 + std::abs(g))) ok = false;
        }
        out.push_back({"Fricke-Vogt invariant conserved under the trace map (G <= 50)", ok, ""});
    }
    {
        bool ok = true;
        for (int i = 0; i < 1000; ++i) {
            Point3 p{coord(rng), coord(rng), coord(rng)};
            Point3 q = trace_map_inverse(trace_map(p));
            if (std::abs(q.x - p.x) > 1e-12 || std::abs(q.y - p.y) > 1e-12 ||
                std::abs(q.z - p.z) > 1e-12)
                ok = false;
        }
        out.push_back({"trace_map_inverse inverts trace_map on [-5,5]^3", ok, ""});
    }
    return out;
}

bool print_results(std::ostream& os, const std::vector<CriterionResult>& results,
                   bool with_subchecks) {
    bool all = true;
    for (const CriterionResult& r : results) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%2d", r.id);
        os << "criterion " << buf << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.title
           << "  (" << format_double(r.seconds) << " s)\n";
        if (with_subchecks)
            for (const SubCheck& s : r.subchecks)
                if (!s.passed || !r.passed)
                    os << "    [" << (s.passed ? "pass" : "FAIL") << "] " << s.name
                       << (s.detail.empty() ? "" : ": " + s.detail) << '\n';
        all = all && r.passed;
    }
    return all;
}

}  // namespace fibspec
