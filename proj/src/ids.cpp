#include "fibspec/ids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fibspec/errors.hpp"

namespace fibspec {

double ids_free(double E) {
    if (E <= -2.0) return 0.0;
    if (E >= 2.0) return 1.0;
    return std::acos(-E / 2.0) / M_PI;
}

IdsEvaluator::IdsEvaluator(PeriodicSpectrum spectrum) : spectrum_(std::move(spectrum)) {
    band_count_ = static_cast<std::int64_t>(spectrum_.bands.size());
    orientation_.reserve(spectrum_.bands.size());
    for (const Band& b : spectrum_.bands) {
        double s = half_trace(b.lo, spectrum_.coupling, spectrum_.level);
        orientation_.push_back(s >= 0.0 ? 1.0 : -1.0);
    }
}

IdsEvaluator::IdsEvaluator(const BandTree& tree, int n) : IdsEvaluator(level_spectrum(tree, n)) {}

IdsSample IdsEvaluator::operator()(double E) const {
    const auto& bands = spectrum_.bands;
    IdsSample s;
    s.energy = E;
    s.coupling = spectrum_.coupling;
    s.level_used = spectrum_.level;
    s.error_bound = 2.0 / static_cast<double>(band_count_);

    // first band with hi > E; everything before it counts as below
    auto it = std::upper_bound(bands.begin(), bands.end(), E,
                               [](double e, const Band& b) { return e < b.hi; });
    std::int64_t below = it - bands.begin();
    double frac = 0.0;
    if (it != bands.end() && it->lo <= E) {
        double x = std::clamp(orientation_[below] * half_trace(E, spectrum_.coupling, spectrum_.level),
                              -1.0, 1.0);
        frac = std::acos(x) / M_PI;
    }
    s.value = (static_cast<double>(below) + frac) / static_cast<double>(band_count_);
    return s;
}

IdsSample ids(double lambda, double E, int n) {
    if (lambda > 4.0) {
        IdsEvaluator ev(build_band_tree(lambda, n), n);
        return ev(E);
    }
    IdsEvaluator ev(scan_bands(lambda, n));
    return ev(E);
}

GapRecord gap_plateau(const BandTree& tree, int n, int left_index) {
    if (n < 0 || n > tree.max_level) throw domain_error("gap_plateau: level absent from tree");
    const auto& bands = tree.levels[n];
    const auto count = static_cast<std::int64_t>(bands.size());
    if (left_index < -1 || left_index >= count)
        throw domain_error("gap_plateau: band index out of range");

    GapRecord rec;
    rec.level = n;
    rec.plateau_den = fibonacci(n);
    if (left_index == -1) {
        rec.lo = -std::numeric_limits<double>::infinity();
        rec.hi = bands.front().lo;
        rec.plateau_num = 0;
        return rec;
    }
    if (left_index == count - 1) {
        rec.lo = bands.back().hi;
        rec.hi = std::numeric_limits<double>::infinity();
        rec.plateau_num = count;
        return rec;
    }
    const Band& l = bands[left_index];
    const Band& r = bands[left_index + 1];
    if (!(l.hi < r.lo))
        throw domain_error("gap_plateau: adjacent bands touch or overlap; not a gap");
    rec.lo = l.hi;
    rec.hi = r.lo;
    rec.plateau_num = left_index + 1;  // bands strictly left of the gap
    return rec;
}

double psi(const IdsEvaluator& ev, double E) { return -2.0 * std::cos(M_PI * ev.value(E)); }

double psi(double lambda, double E, int n) {
    if (lambda > 4.0) {
        IdsEvaluator ev(build_band_tree(lambda, n), n);
        return psi(ev, E);
    }
    IdsEvaluator ev(scan_bands(lambda, n));
    return psi(ev, E);
}

}  // namespace fibspec
