#include "fibspec/approximants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "fibspec/errors.hpp"

namespace fibspec {

const char* to_string(BandKind k) {
    switch (k) {
        case BandKind::A: return "A";
        case BandKind::B: return "B";
        default: return "U";
    }
}

namespace {

// Bisect a sign change of f down to a one-ulp bracket. The returned pair
// (a, b) keeps sign(f(a)) == sign(fa_in). Band widths at deep levels fall
// under any fixed relative tolerance, so edges are always driven to ulp.
template <typename F>
std::pair<double, double> bisect_ulp(F&& f, double a, double b, double fa) {
    for (int it = 0; it < 1400; ++it) {
        double m = 0.5 * (a + b);
        if (!(m > a && m < b)) break;
        double fm = f(m);
        if (fm == 0.0) return {m, m};
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return {a, b};
}

struct LocatedBand {
    double lo, hi;
    double lo_outer, hi_outer;
    double trace_lo_outer, trace_hi_outer;
};

// Locate the unique band of sigma_c inside (lo, hi). Requires the bracket to
// contain exactly one band of sigma_c, hence exactly one zero of x_c and
// opposite trace signs at the ends. Bands narrower than one ulp collapse to
// the zero bracket.
LocatedBand locate_band(double lambda, int c, double lo, double hi) {
    auto f = [&](double E) { return half_trace(E, lambda, c); };
    double flo = f(lo), fhi = f(hi);
    if ((flo > 0.0) == (fhi > 0.0))
        throw structural_error("band isolation: no trace sign change across parent bracket at level " +
                                   std::to_string(c),
                               c, lo, hi);
    auto [za, zb] = bisect_ulp(f, lo, hi, flo);
    double s = (flo > 0.0) ? 1.0 : -1.0;

    LocatedBand out{};
    double fza = f(za);
    if (std::abs(fza) <= 1.0) {
        auto g = [&](double E) { return f(E) - s; };
        auto [o, i] = bisect_ulp(g, lo, za, g(lo));
        out.lo = i;
        out.lo_outer = o;
        out.trace_lo_outer = f(o);
    } else {
        out.lo = za;  // sub-ulp band: trace jumps past +-1 between adjacent doubles
        out.lo_outer = za;
        out.trace_lo_outer = fza;
    }
    double fzb = f(zb);
    if (std::abs(fzb) <= 1.0) {
        auto h = [&](double E) { return f(E) + s; };
        auto [i, o] = bisect_ulp(h, zb, hi, h(zb));
        out.hi = i;
        out.hi_outer = o;
        out.trace_hi_outer = f(o);
    } else {
        out.hi = zb;
        out.hi_outer = zb;
        out.trace_hi_outer = fzb;
    }
    if (out.hi < out.lo) {
        double m = 0.5 * (out.lo + out.hi);
        out.lo = out.hi = m;
    }
    return out;
}

struct ChildRecord {
    Band band;
};

// Children of one finalized parent band, per the containment pattern:
// a type A parent holds one type B band two levels down; a type B parent
// holds one type A band one level down flanked by two type B bands two
// levels down.
std::vector<ChildRecord> spawn_children(double lambda, const Band& parent, int max_level) {
    std::vector<ChildRecord> out;
    int k = parent.level;
    auto push = [&](int level, BandKind kind, const LocatedBand& l) {
        Band b;
        b.level = level;
        b.kind = kind;
        b.lo = l.lo;
        b.hi = l.hi;
        b.lo_outer = l.lo_outer;
        b.hi_outer = l.hi_outer;
        b.trace_lo_outer = l.trace_lo_outer;
        b.trace_hi_outer = l.trace_hi_outer;
        b.parent_level = parent.level;
        b.parent_index = parent.index;
        out.push_back({b});
    };
    if (parent.kind == BandKind::A) {
        if (k + 2 <= max_level)
            push(k + 2, BandKind::B, locate_band(lambda, k + 2, parent.lo, parent.hi));
    } else {
        if (k + 1 <= max_level) {
            LocatedBand a = locate_band(lambda, k + 1, parent.lo, parent.hi);
            push(k + 1, BandKind::A, a);
            if (k + 2 <= max_level) {
                push(k + 2, BandKind::B, locate_band(lambda, k + 2, parent.lo, a.lo));
                push(k + 2, BandKind::B, locate_band(lambda, k + 2, a.hi, parent.hi));
            }
        }
    }
    return out;
}

}  // namespace

BandTree build_band_tree(double lambda, int max_level, const TreeOptions& opts) {
    if (!(lambda > 4.0))
        throw unsupported_coupling_error("hierarchy requires lambda > 4; use --scan");
    if (lambda > opts.coupling_cap)
        throw domain_error("coupling exceeds the overflow guard");
    if (max_level < 0 || max_level > opts.level_cap)
        throw domain_error("max_level outside [0, " + std::to_string(opts.level_cap) + "]");

    BandTree tree;
    tree.coupling = lambda;
    tree.max_level = max_level;
    tree.levels.resize(max_level + 1);

    std::vector<std::vector<ChildRecord>> pending(max_level + 3);
    pending[0].push_back({Band{0, 0, BandKind::A, -2.0, 2.0, -2.0, 2.0, 1.0, -1.0, -1, -1, {}}});
    if (max_level >= 1)
        pending[1].push_back(
            {Band{1, 0, BandKind::B, lambda - 2.0, lambda + 2.0, lambda - 2.0, lambda + 2.0, -1.0, 1.0, -1, -1, {}}});

    auto finalize = [&](int level) {
        auto& recs = pending[level];
        std::sort(recs.begin(), recs.end(),
                  [](const ChildRecord& a, const ChildRecord& b) { return a.band.lo < b.band.lo; });
        auto& dst = tree.levels[level];
        dst.reserve(recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
            Band b = recs[i].band;
            b.index = static_cast<int>(i);
            if (b.parent_level >= 0)
                tree.levels[b.parent_level][b.parent_index].children.emplace_back(level, b.index);
            dst.push_back(std::move(b));
        }
        recs.clear();
        recs.shrink_to_fit();
    };

    finalize(0);
    for (int k = 0; k <= max_level; ++k) {
        if (k >= 1 && tree.levels[k].empty()) finalize(k);
        auto& parents = tree.levels[k];
        const std::size_t n = parents.size();
        if (n >= 32) {
            // children of distinct parents are independent
            unsigned hw = std::max(2u, std::thread::hardware_concurrency());
            std::size_t chunk = (n + hw - 1) / hw;
            std::vector<std::future<std::vector<std::vector<ChildRecord>>>> futs;
            for (std::size_t lo = 0; lo < n; lo += chunk) {
                std::size_t hi = std::min(n, lo + chunk);
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    std::vector<std::vector<ChildRecord>> part;
                    part.reserve(hi - lo);
                    for (std::size_t i = lo; i < hi; ++i)
                        part.push_back(spawn_children(lambda, parents[i], max_level));
                    return part;
                }));
            }
            for (auto& fu : futs)
                for (auto& part : fu.get())
                    for (auto& rec : part) pending[rec.band.level].push_back(std::move(rec));
        } else {
            for (const Band& parent : parents)
                for (auto& rec : spawn_children(lambda, parent, max_level))
                    pending[rec.band.level].push_back(std::move(rec));
        }
        if (k + 1 <= max_level) finalize(k + 1);
    }
    return tree;
}

std::int64_t BandTree::descendant_count(const Band& b, int n) const {
    if (b.level == n) return 1;
    if (b.level > n) return 0;
    std::int64_t total = 0;
    std::deque<std::pair<int, int>> queue(b.children.begin(), b.children.end());
    while (!queue.empty()) {
        auto [lvl, idx] = queue.front();
        queue.pop_front();
        if (lvl == n) {
            ++total;
            continue;
        }
        if (lvl > n) continue;
        const Band& c = levels[lvl][idx];
        queue.insert(queue.end(), c.children.begin(), c.children.end());
    }
    return total;
}

PeriodicSpectrum level_spectrum(const BandTree& tree, int n) {
    if (n < 0 || n > tree.max_level) throw domain_error("level absent from tree");
    PeriodicSpectrum sp;
    sp.coupling = tree.coupling;
    sp.level = n;
    sp.bands = tree.levels[n];
    for (auto& b : sp.bands) {
        b.kind = BandKind::Unlabeled;
        b.children.clear();
    }
    return sp;
}

const Band& thinnest_band(const BandTree& tree, int k) {
    if (k < 0 || k > tree.max_level || tree.levels[k].empty())
        throw domain_error("thinnest_band: level absent from tree");
    const Band* best = nullptr;
    for (const Band& b : tree.levels[k]) {
        if (b.kind != BandKind::B) continue;
        if (!best || b.width() < best->width()) best = &b;
    }
    if (!best) throw domain_error("thinnest_band: no kind-B bands at level " + std::to_string(k));
    return *best;
}

// ---------------------------------------------------------------------------
// scan_bands: adaptive subdivision with first-order enclosures
// ---------------------------------------------------------------------------

namespace {

// First-order model of x_k over a cell [m-h, m+h]: value c + g*t with |t|<=h,
// remainder bounded by r. Linear parts track the true derivative recursion,
// which keeps enclosures tight where naive interval arithmetic blows up from
// the dependency problem.
struct Affine {
    double c, g, r;

    double lo(double h) const { return c - std::abs(g) * h - r; }
    double hi(double h) const { return c + std::abs(g) * h + r; }
    double abs_min(double h) const {
        double a = lo(h), b = hi(h);
        if (a > 0.0) return a;
        if (b < 0.0) return -b;
        return 0.0;
    }
    double abs_max(double h) const { return std::max(std::abs(lo(h)), std::abs(hi(h))); }
};

struct TraceRange {
    double lo, hi;
    bool escaped;  // |x_j| > 1 certified for the whole cell from some level on
};

// Range of x_k over [m-h, m+h]. Once two consecutive trace enclosures lie
// beyond +-1 with the preceding one dominated, |x_{j+1}| >= |x_j|(2|x_{j-1}|-1)
// keeps growing, so |x_k| > 1 holds on the whole cell and the recursion can
// stop early (this also happens long before the gap-side magnitudes overflow).
TraceRange trace_range(double m, double h, double lambda, int k) {
    Affine x2{1.0, 0.0, 0.0};
    Affine x1{m / 2.0, 0.5, 0.0};
    if (k == -1) return {1.0, 1.0, false};
    if (k == 0) return {x1.lo(h), x1.hi(h), false};
    Affine x0{(m - lambda) / 2.0, 0.5, 0.0};
    for (int i = 1; i < k; ++i) {
        if (x1.abs_min(h) > 1.0 && x0.abs_min(h) > 1.0 && x2.abs_max(h) <= x0.abs_min(h))
            return {0.0, 0.0, true};
        double pc = x0.c * x1.c;
        double pg = x0.c * x1.g + x1.c * x0.g;
        double pr = std::abs(x0.g * x1.g) * h * h + std::abs(x0.c) * x1.r +
                    std::abs(x1.c) * x0.r + std::abs(x0.g) * h * x1.r +
                    std::abs(x1.g) * h * x0.r + x0.r * x1.r;
        Affine next{2.0 * pc - x2.c, 2.0 * pg - x2.g, 2.0 * pr + x2.r};
        next.r += 4.0e-16 * (std::abs(next.c) + std::abs(next.g) * h + next.r + 1.0);
        if (!std::isfinite(next.c) || !std::isfinite(next.g) || !std::isfinite(next.r))
            return {-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), false};
        x2 = x1;
        x1 = x0;
        x0 = next;
    }
    return {x0.lo(h), x0.hi(h), false};
}

enum class CellClass { Gap, Interior, Boundary };

struct Cell {
    double lo, hi;
    CellClass cls;
};

struct EdgeEvent {
    double pos;
    enum Type { Enter, Leave, Touch } type;
    double outer, trace_outer;  // audit bracket for Enter/Leave
};

}  // namespace

PeriodicSpectrum scan_bands(double lambda, int n, const ScanOptions& opts) {
    if (lambda < 0.0) throw domain_error("scan_bands: coupling must be >= 0");
    if (n < 0 || n > opts.level_cap)
        throw domain_error("scan_bands: level outside [0, " + std::to_string(opts.level_cap) + "]");
    const std::int64_t expected = fibonacci(n);
    const double lo0 = -2.0 - 1e-6;
    const double hi0 = 2.0 + lambda + 1e-6;
    const double base_width = (hi0 - lo0) / static_cast<double>(1 << opts.base_depth);

    auto f = [&](double E) { return half_trace(E, lambda, n); };
    auto fd = [&](double E) { return half_trace_deriv(E, lambda, n); };

    // Phase 1: ordered leaf cells. A cell is kept once it is certified empty
    // (enclosure outside [-1,1]), certified interior (strictly inside), or
    // refined to the boundary tolerance around a band edge.
    std::vector<Cell> cells;
    std::int64_t visited = 0;
    std::vector<std::pair<double, double>> stack;
    stack.emplace_back(lo0, hi0);
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        if (++visited > opts.max_cells)
            throw resolution_error("scan_bands: cell budget exceeded", 0,
                                   static_cast<int>(expected));
        double m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        bool at_base = (hi - lo) <= base_width;
        TraceRange a = trace_range(m, h, lambda, n);
        if (a.escaped || a.lo > 1.0 || a.hi < -1.0) {
            cells.push_back({lo, hi, CellClass::Gap});
            continue;
        }
        if (at_base && a.lo > -1.0 && a.hi < 1.0) {
            cells.push_back({lo, hi, CellClass::Interior});
            continue;
        }
        if ((hi - lo) <= opts.boundary_tol * (1.0 + std::abs(lo) + std::abs(hi))) {
            cells.push_back({lo, hi, CellClass::Boundary});
            continue;
        }
        stack.emplace_back(m, hi);
        stack.emplace_back(lo, m);
    }

    // Phase 2: edge events from the ordered samples at cell boundaries.
    std::vector<EdgeEvent> events;
    const double touch_tol = 1e-9;
    double prevE = cells.front().lo;
    double prevF = f(prevE);
    double prevD = fd(prevE).deriv;
    bool state_in = std::abs(prevF) <= 1.0;

    auto emit_crossing = [&](double a, double b, double fa, double fb, bool entering) {
        double lvl = (std::max(fa, fb) > 1.0) ? 1.0 : -1.0;
        auto g = [&](double E) { return f(E) - lvl; };
        auto [x, y] = bisect_ulp(g, a, b, fa - lvl);
        // E increases rightward, so the band side of the bracket is y when
        // entering and x when leaving
        double inner = entering ? y : x;
        double outer = entering ? x : y;
        events.push_back({inner, entering ? EdgeEvent::Enter : EdgeEvent::Leave, outer, f(outer)});
    };

    for (const Cell& c : cells) {
        double E = c.hi;
        double F = f(E);
        bool now_in = std::abs(F) <= 1.0;
        double D = fd(E).deriv;
        if (c.cls == CellClass::Boundary) {
            bool crossed = (now_in != state_in);
            if (crossed) emit_crossing(c.lo, c.hi, prevF, F, now_in);
            if ((prevD > 0.0) != (D > 0.0)) {
                // extremum inside this cell; classify tangencies and
                // sub-cell gaps/bands that leave no sample signature
                auto g = [&](double E2) { return fd(E2).deriv; };
                auto [xa, xb] = bisect_ulp(g, c.lo, c.hi, prevD);
                double Estar = 0.5 * (xa + xb);
                double v = f(Estar);
                if (!crossed && state_in && std::abs(v) >= 1.0 - touch_tol) {
                    if (std::abs(v) <= 1.0) {
                        events.push_back({Estar, EdgeEvent::Touch, Estar, v});
                    } else {
                        // micro-gap narrower than the cell
                        emit_crossing(c.lo, Estar, prevF, v, false);
                        emit_crossing(Estar, c.hi, v, F, true);
                    }
                } else if (!crossed && !state_in && std::abs(v) < 1.0 - touch_tol) {
                    // micro-band hidden inside one boundary cell
                    emit_crossing(c.lo, Estar, prevF, v, true);
                    emit_crossing(Estar, c.hi, v, F, false);
                }
            }
        } else if (now_in != state_in) {
            // certified cells cannot contain a crossing; flag on the seam
            emit_crossing(c.lo, c.hi, prevF, F, now_in);
        }
        prevE = E;
        prevF = F;
        prevD = D;
        state_in = now_in;
    }

    // Phase 3: assemble bands from the alternating event stream.
    std::vector<Band> bands;
    bool open = false;
    Band cur;
    auto open_band = [&](double pos, double outer, double tr) {
        cur = Band{};
        cur.level = n;
        cur.kind = BandKind::Unlabeled;
        cur.lo = pos;
        cur.lo_outer = outer;
        cur.trace_lo_outer = tr;
        open = true;
    };
    auto close_band = [&](double pos, double outer, double tr) {
        cur.hi = pos;
        cur.hi_outer = outer;
        cur.trace_hi_outer = tr;
        cur.index = static_cast<int>(bands.size());
        bands.push_back(cur);
        open = false;
    };
    for (const EdgeEvent& e : events) {
        switch (e.type) {
            case EdgeEvent::Enter:
                if (open) close_band(e.pos, e.outer, e.trace_outer);  // defensive
                open_band(e.pos, e.outer, e.trace_outer);
                break;
            case EdgeEvent::Leave:
                if (open) close_band(e.pos, e.outer, e.trace_outer);
                break;
            case EdgeEvent::Touch:
                if (open) {
                    close_band(e.pos, e.pos, e.trace_outer);
                    open_band(e.pos, e.pos, e.trace_outer);
                }
                break;
        }
    }

    if (static_cast<std::int64_t>(bands.size()) != expected)
        throw resolution_error("scan_bands: found " + std::to_string(bands.size()) +
                                   " bands of " + std::to_string(expected) +
                                   " at maximum resolution",
                               static_cast<int>(bands.size()), static_cast<int>(expected));

    PeriodicSpectrum sp;
    sp.coupling = lambda;
    sp.level = n;
    sp.bands = std::move(bands);
    return sp;
}

std::vector<double> periodic_hamiltonian_eigs(double lambda, int n) {
    if (n < 0) throw domain_error("periodic_hamiltonian_eigs: level must be >= 0");
    std::int64_t size = fibonacci(n);
    if (size > 2000)
        throw resource_error("periodic_hamiltonian_eigs: F_n = " + std::to_string(size) +
                             " exceeds the dense-solve cap of 2000");
    const int N = static_cast<int>(size);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) H(i, i) = potential_approximant(lambda, i + 1, n);
    for (int i = 0; i < N; ++i) {
        int j = (i + 1) % N;
        H(i, j) += 1.0;  // wraparound doubles the bond when j wraps onto i's other side
        H(j, i) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + N);
    return out;
}

}  // namespace fibspec
