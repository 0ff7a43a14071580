#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fibspec/approximants.hpp"
#include "fibspec/ids.hpp"
#include "fibspec/regularity.hpp"

namespace fibspec {

/// Round-trip-safe decimal rendering of a binary64 (17 significant digits).
std::string format_double(double v);

/// RFC-4180 field quoting (only when the field needs it).
std::string csv_field(const std::string& s);

void write_bands_csv(std::ostream& os, const std::vector<Band>& bands);
void write_bands_csv(std::ostream& os, const BandTree& tree);
/// Nested JSON with containment edges.
void write_tree_json(std::ostream& os, const BandTree& tree);
void write_spectrum_json(std::ostream& os, const PeriodicSpectrum& sp);

void write_ids_csv(std::ostream& os, const std::vector<IdsSample>& rows);
void write_ids_json(std::ostream& os, const std::vector<IdsSample>& rows);

/// Columns: lambda, k, source, band_length, delta_N, exponent, delta_N_finite,
/// audit_level, gamma_lower, gamma_tilde_k.
void write_holder_csv(std::ostream& os, double lambda, const std::vector<HolderEstimate>& rows);
void write_holder_json(std::ostream& os, double lambda, const std::vector<HolderEstimate>& rows);

struct RasterRow {
    double energy;
    std::int64_t escaped_at_step;  // -1 when bounded up to the iteration cap
};
void write_raster_csv(std::ostream& os, const std::vector<RasterRow>& rows);
void write_raster_json(std::ostream& os, const std::vector<RasterRow>& rows);

}  // namespace fibspec
