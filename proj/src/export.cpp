#include "fibspec/export.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "fibspec/regularity.hpp"

namespace fibspec {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_bands_csv(std::ostream& os, const std::vector<Band>& bands) {
    os << "level,index,kind,lo,hi,length\n";
    for (const Band& b : bands)
        os << b.level << ',' << b.index << ',' << to_string(b.kind) << ',' << format_double(b.lo)
           << ',' << format_double(b.hi) << ',' << format_double(b.width()) << '\n';
}

void write_bands_csv(std::ostream& os, const BandTree& tree) {
    os << "level,index,kind,lo,hi,length\n";
    for (const auto& level : tree.levels)
        for (const Band& b : level)
            os << b.level << ',' << b.index << ',' << to_string(b.kind) << ','
               << format_double(b.lo) << ',' << format_double(b.hi) << ','
               << format_double(b.width()) << '\n';
}

namespace {

json band_to_json(const Band& b) {
    json j;
    j["level"] = b.level;
    j["index"] = b.index;
    j["kind"] = to_string(b.kind);
    j["lo"] = b.lo;
    j["hi"] = b.hi;
    j["length"] = b.width();
    return j;
}

json band_node(const BandTree& tree, const Band& b) {
    json j = band_to_json(b);
    json kids = json::array();
    for (auto [lvl, idx] : b.children) kids.push_back(band_node(tree, tree.band(lvl, idx)));
    j["children"] = std::move(kids);
    return j;
}

}  // namespace

void write_tree_json(std::ostream& os, const BandTree& tree) {
    json j;
    j["coupling"] = tree.coupling;
    j["max_level"] = tree.max_level;
    json roots = json::array();
    roots.push_back(band_node(tree, tree.band(0, 0)));
    if (tree.max_level >= 1) roots.push_back(band_node(tree, tree.band(1, 0)));
    j["roots"] = std::move(roots);
    json edges = json::array();
    for (const auto& level : tree.levels)
        for (const Band& b : level)
            for (auto [lvl, idx] : b.children)
                edges.push_back({{"parent", {b.level, b.index}}, {"child", {lvl, idx}}});
    j["containment_edges"] = std::move(edges);
    os << j.dump(2) << '\n';
}

void write_spectrum_json(std::ostream& os, const PeriodicSpectrum& sp) {
    json j;
    j["coupling"] = sp.coupling;
    j["level"] = sp.level;
    json arr = json::array();
    for (const Band& b : sp.bands) arr.push_back(band_to_json(b));
    j["bands"] = std::move(arr);
    os << j.dump(2) << '\n';
}

void write_ids_csv(std::ostream& os, const std::vector<IdsSample>& rows) {
    os << "E,N,level,error_bound\n";
    for (const IdsSample& s : rows)
        os << format_double(s.energy) << ',' << format_double(s.value) << ',' << s.level_used
           << ',' << format_double(s.error_bound) << '\n';
}

void write_ids_json(std::ostream& os, const std::vector<IdsSample>& rows) {
    json arr = json::array();
    for (const IdsSample& s : rows)
        arr.push_back({{"E", s.energy},
                       {"N", s.value},
                       {"level", s.level_used},
                       {"error_bound", s.error_bound}});
    os << arr.dump(2) << '\n';
}

void write_holder_csv(std::ostream& os, double lambda, const std::vector<HolderEstimate>& rows) {
    os << "lambda,k,source,band_length,delta_N,exponent,delta_N_finite,audit_level,"
          "gamma_lower,gamma_tilde_k\n";
    for (const HolderEstimate& h : rows) {
        os << format_double(lambda) << ',' << h.k << ','
           << (h.source == EstimateSource::BandPair ? "band_pair" : "gap_edge") << ','
           << format_double(h.scale) << ',' << format_double(h.delta_n) << ','
           << format_double(h.exponent) << ',' << format_double(h.delta_n_finite) << ','
           << h.audit_level << ',' << format_double(gamma_lower(lambda)) << ','
           << (lambda >= 8.0 && h.k >= 4 ? format_double(gamma_tilde_k(lambda, h.k)) : "")
           << '\n';
    }
}

void write_holder_json(std::ostream& os, double lambda, const std::vector<HolderEstimate>& rows) {
    json arr = json::array();
    for (const HolderEstimate& h : rows) {
        json j{{"lambda", lambda},
               {"k", h.k},
               {"source", h.source == EstimateSource::BandPair ? "band_pair" : "gap_edge"},
               {"band_length", h.scale},
               {"delta_N", h.delta_n},
               {"exponent", h.exponent},
               {"delta_N_finite", h.delta_n_finite},
               {"audit_level", h.audit_level},
               {"gamma_lower", gamma_lower(lambda)}};
        if (lambda >= 8.0 && h.k >= 4) j["gamma_tilde_k"] = gamma_tilde_k(lambda, h.k);
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
}

void write_raster_csv(std::ostream& os, const std::vector<RasterRow>& rows) {
    os << "E,escaped_at_step\n";
    for (const RasterRow& r : rows)
        os << format_double(r.energy) << ',' << r.escaped_at_step << '\n';
}

void write_raster_json(std::ostream& os, const std::vector<RasterRow>& rows) {
    json arr = json::array();
    for (const RasterRow& r : rows)
        arr.push_back({{"E", r.energy}, {"escaped_at_step", r.escaped_at_step}});
    os << arr.dump(2) << '\n';
}

}  // namespace fibspec
