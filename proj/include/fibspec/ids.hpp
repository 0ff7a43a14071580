#pragma once

#include <cstdint>
#include <memory>

#include "fibspec/approximants.hpp"

namespace fibspec {

/// Integrated density of states of the free operator:
/// 0 below -2, 1 above 2, arccos(-E/2)/pi in between.
double ids_free(double E);

struct IdsSample {
    double energy = 0.0;
    double coupling = 0.0;
    int level_used = 0;
    double value = 0.0;
    double error_bound = 0.0;  // 2/F_n working heuristic, exposed as data
};

/// Band-counting IDS evaluator over one periodic-approximant spectrum.
/// Inside a band the value interpolates with the Bloch phase
/// arccos(s * x_n(E))/pi, oriented to run 0 -> 1 left to right; s is the
/// sign of x_n at the band's left edge. A band counts as "below" once
/// E >= hi, making the result right-continuous.
class IdsEvaluator {
public:
    explicit IdsEvaluator(PeriodicSpectrum spectrum);
    /// Builds the level-n spectrum from the hierarchy (coupling > 4).
    IdsEvaluator(const BandTree& tree, int n);

    IdsSample operator()(double E) const;
    double value(double E) const { return (*this)(E).value; }

    const PeriodicSpectrum& spectrum() const { return spectrum_; }
    int level() const { return spectrum_.level; }
    double coupling() const { return spectrum_.coupling; }

private:
    PeriodicSpectrum spectrum_;
    std::vector<double> orientation_;  // sign of x_n at each band's left edge
    std::int64_t band_count_;
};

/// One-shot evaluation; builds the level-n spectrum via the hierarchy when
/// lambda > 4 and via scanning otherwise.
IdsSample ids(double lambda, double E, int n);

struct GapRecord {
    int level = 0;
    double lo = 0.0, hi = 0.0;  // gap endpoints
    std::int64_t plateau_num = 0, plateau_den = 1;  // exact rational j/F_n
    double plateau() const { return static_cast<double>(plateau_num) / static_cast<double>(plateau_den); }
};

/// Plateau value of the gap to the right of band `left_index` at level n of
/// the tree (left_index == -1 selects the half-line left of the spectrum).
/// Throws domain_error when the chosen pair of bands touches or overlaps.
GapRecord gap_plateau(const BandTree& tree, int n, int left_index);

/// Conjugating energy map: psi = -2 cos(pi N_lambda(E)), the free-operator
/// energy with the same IDS value. Strictly increasing in N, range [-2, 2].
double psi(const IdsEvaluator& ev, double E);
double psi(double lambda, double E, int n);

}  // namespace fibspec
