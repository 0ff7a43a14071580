#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fibspec/trace_core.hpp"

namespace fibspec {

enum class BandKind { A, B, Unlabeled };

const char* to_string(BandKind k);

struct Band {
    int level = 0;
    int index = 0;  // left-to-right position within its level
    BandKind kind = BandKind::Unlabeled;
    double lo = 0.0, hi = 0.0;
    // audit trail: outer bracket points of the edge bisections and the
    // half-trace values there (|trace| just above 1 outside the band)
    double lo_outer = 0.0, hi_outer = 0.0;
    double trace_lo_outer = 0.0, trace_hi_outer = 0.0;

    int parent_level = -1, parent_index = -1;
    std::vector<std::pair<int, int>> children;  // (level, index)

    double width() const { return hi - lo; }
    bool contains(double E) const { return lo <= E && E <= hi; }
};

struct BandTree {
    double coupling = 0.0;
    int max_level = 0;
    std::vector<std::vector<Band>> levels;  // levels[k] sorted by lo

    const Band& band(int level, int index) const { return levels.at(level).at(index); }
    /// Number of level-n bands contained in the given band.
    std::int64_t descendant_count(const Band& b, int n) const;
};

struct PeriodicSpectrum {
    double coupling = 0.0;
    int level = 0;
    std::vector<Band> bands;  // sorted, kind Unlabeled
};

struct TreeOptions {
    int level_cap = 20;
    double coupling_cap = 1e4;  // overflow guard
};

/// Construct the type A/B band hierarchy for lambda > 4 down to max_level.
/// Children are isolated by guaranteed-bracket bisection: each expected child
/// band contains exactly one zero of its half-trace inside the parent
/// interval, so plain sign bisection pins an interior point and the edges are
/// then the unique roots of x_c = +-1 on either side.
BandTree build_band_tree(double lambda, int max_level, const TreeOptions& opts = {});

struct ScanOptions {
    int level_cap = 18;
    int base_depth = 14;        // initial subdivision matches a 2^14-point grid
    std::int64_t max_cells = 4'000'000;
    double boundary_tol = 1e-10;  // width floor of unresolved boundary cells
};

/// All F_n bands of the level-n periodic approximant for arbitrary coupling,
/// by adaptive sign scanning of x_n -+ 1 with certified interval enclosures.
/// Touching bands (closed gaps) are split at the shared tangency of x_n = +-1.
PeriodicSpectrum scan_bands(double lambda, int n, const ScanOptions& opts = {});

/// Flatten one tree level into a PeriodicSpectrum (kinds dropped).
PeriodicSpectrum level_spectrum(const BandTree& tree, int n);

/// The minimal-length kind-B band at level k.
const Band& thinnest_band(const BandTree& tree, int k);

/// Eigenvalues of the F_n x F_n periodic-boundary discrete Schroedinger
/// matrix with the level-n approximant potential, sorted ascending. Dense
/// solve; independent oracle for scan_bands (one eigenvalue per band).
std::vector<double> periodic_hamiltonian_eigs(double lambda, int n);

}  // namespace fibspec
