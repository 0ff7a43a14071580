#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fibspec/approximants.hpp"
#include "fibspec/dynamics.hpp"
#include "fibspec/errors.hpp"
#include "fibspec/export.hpp"
#include "fibspec/ids.hpp"
#include "fibspec/regularity.hpp"
#include "fibspec/verify.hpp"

namespace {

using namespace fibspec;

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' || g.count < 1 ||
        !is.eof())
        throw io_error("bad --grid, expected lo:hi:count");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    pts.reserve(g.count);
    for (int i = 0; i < g.count; ++i)
        pts.push_back(g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.count - 1));
    return pts;
}

std::vector<double> read_energy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read energy file: " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw io_error("bad energy value: " + line);
        }
    }
    if (out.empty()) throw io_error("energy file is empty: " + path);
    return out;
}

// Writes to the path, or stdout for "-".
class Sink {
public:
    explicit Sink(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_, std::ios::binary);
            if (!file_) throw io_error("cannot open output file: " + path_);
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

private:
    std::string path_;
    std::ofstream file_;
};

int run(int argc, char** argv) {
    CLI::App app{"Fibonacci Hamiltonian spectra, integrated density of states, "
                 "and Hoelder-regularity checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file; flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.get_config_formatter_base()->valueSeparator('=');

    std::string output = "-";
    std::string format = "csv";
    std::uint64_t seed = 0;
    app.add_option("--output,-o", output, "output path ('-' for stdout)")->capture_default_str();
    app.add_option("--format,-f", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for the randomized property sweeps")
        ->capture_default_str();

    // --- bands ---
    auto* bands = app.add_subcommand("bands", "band structure of a periodic approximant");
    double b_lambda = 0.0;
    int b_level = 0;
    bool b_scan = false;
    bands->add_option("--lambda", b_lambda, "coupling constant")->required();
    bands->add_option("--level", b_level, "approximant level")->required();
    bands->add_flag("--scan", b_scan, "use the generic sign scan instead of the hierarchy");

    // --- ids ---
    auto* idsc = app.add_subcommand("ids", "integrated density of states via band counting");
    double i_lambda = 0.0;
    int i_level = 12;
    bool i_free = false;
    std::string i_grid, i_energies;
    idsc->add_option("--lambda", i_lambda, "coupling constant");
    idsc->add_option("--level", i_level, "approximant level")->capture_default_str();
    idsc->add_flag("--free", i_free, "evaluate the free-operator IDS instead");
    idsc->add_option("--grid", i_grid, "energies as lo:hi:count");
    idsc->add_option("--energies", i_energies, "file with one energy per line");

    // --- holder ---
    auto* holder = app.add_subcommand("holder", "empirical Hoelder exponents with envelopes");
    double h_lambda = 0.0;
    int h_kmin = 4, h_kmax = 10;
    holder->add_option("--lambda", h_lambda, "coupling constant (> 4)")->required();
    holder->add_option("--kmin", h_kmin, "smallest level")->capture_default_str();
    holder->add_option("--kmax", h_kmax, "largest level")->capture_default_str();

    // --- dynamics ---
    auto* dyn = app.add_subcommand("dynamics", "trace-map orbit tools");
    dyn->require_subcommand(1);
    auto* per2 = dyn->add_subcommand("per2", "period-2 point and unstable multiplier");
    double p_lambda = 0.0;
    per2->add_option("--lambda", p_lambda, "coupling constant in [0, 2)")->required();
    auto* esc = dyn->add_subcommand("escape", "escape-time raster along the spectral line");
    double e_lambda = 0.0;
    std::string e_grid = "-3:10:1001";
    std::int64_t e_maxiter = 1000;
    esc->add_option("--lambda", e_lambda, "coupling constant")->required();
    esc->add_option("--grid", e_grid, "energies as lo:hi:count")->capture_default_str();
    esc->add_option("--max-iter", e_maxiter, "iteration cap")->capture_default_str();
    auto* semi = dyn->add_subcommand("semiconj", "semiconjugacy residual over a torus grid");
    int s_size = 200;
    semi->add_option("--grid-size", s_size, "points per torus direction")->capture_default_str();

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "run the full verification suite");

    // global flags (--format, --output, --seed, --config) may appear after a
    // subcommand name
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "ERROR 1: " << e.what() << '\n';
        std::cerr << "run with --help for usage\n";
        return 1;
    }

    Sink sink(output);
    std::ostream& os = sink.stream();

    if (*bands) {
        if (b_scan) {
            PeriodicSpectrum sp = scan_bands(b_lambda, b_level);
            format == "csv" ? write_bands_csv(os, sp.bands) : write_spectrum_json(os, sp);
        } else {
            BandTree tree = build_band_tree(b_lambda, b_level);
            if (format == "csv")
                write_bands_csv(os, tree.levels[b_level]);
            else
                write_tree_json(os, tree);
        }
        return 0;
    }

    if (*idsc) {
        std::vector<double> energies;
        if (!i_grid.empty())
            energies = grid_points(parse_grid(i_grid));
        else if (!i_energies.empty())
            energies = read_energy_file(i_energies);
        else
            throw io_error("ids needs --grid or --energies");

        std::vector<IdsSample> rows;
        rows.reserve(energies.size());
        if (i_free) {
            for (double E : energies)
                rows.push_back({E, 0.0, 0, ids_free(E), 0.0});
        } else {
            if (!idsc->count("--lambda")) throw io_error("ids needs --lambda or --free");
            if (i_lambda > 4.0) {
                IdsEvaluator ev(build_band_tree(i_lambda, i_level), i_level);
                for (double E : energies) rows.push_back(ev(E));
            } else {
                IdsEvaluator ev(scan_bands(i_lambda, i_level));
                for (double E : energies) rows.push_back(ev(E));
            }
        }
        format == "csv" ? write_ids_csv(os, rows) : write_ids_json(os, rows);
        return 0;
    }

    if (*holder) {
        std::vector<int> ks;
        for (int k = h_kmin; k <= h_kmax; ++k) ks.push_back(k);
        BandTree tree = build_band_tree(h_lambda, h_kmax + 2);
        auto rows = empirical_holder(tree, ks);
        format == "csv" ? write_holder_csv(os, h_lambda, rows)
                        : write_holder_json(os, h_lambda, rows);
        return 0;
    }

    if (*per2) {
        Period2Point p = per2_solve(p_lambda);
        if (format == "csv") {
            os << "lambda,x,y,mu_u,gamma_small\n";
            os << format_double(p.coupling) << ',' << format_double(p.x) << ','
               << format_double(p.point.y) << ',' << format_double(p.mu_u) << ','
               << format_double(gamma_small(p.coupling, p.mu_u)) << '\n';
        } else {
            os << "{\n  \"lambda\": " << format_double(p.coupling)
               << ",\n  \"x\": " << format_double(p.x)
               << ",\n  \"y\": " << format_double(p.point.y)
               << ",\n  \"mu_u\": " << format_double(p.mu_u)
               << ",\n  \"gamma_small\": " << format_double(gamma_small(p.coupling, p.mu_u))
               << "\n}\n";
        }
        return 0;
    }

    if (*esc) {
        std::vector<RasterRow> rows;
        for (double E : grid_points(parse_grid(e_grid))) {
            OrbitResult r = escape_time(line_point(E, e_lambda), e_maxiter);
            rows.push_back({E, r.escaped ? r.steps : -1});
        }
        format == "csv" ? write_raster_csv(os, rows) : write_raster_json(os, rows);
        return 0;
    }

    if (*semi) {
        double worst = 0.0, worst_g = 0.0;
        for (int i = 0; i < s_size; ++i)
            for (int j = 0; j < s_size; ++j) {
                TorusPoint t{static_cast<double>(i) / s_size, static_cast<double>(j) / s_size};
                Point3 a = semiconjugacy(cat_map(t));
                Point3 b = trace_map(semiconjugacy(t));
                worst = std::max(
                    {worst, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
                worst_g = std::max(worst_g, std::abs(fricke_vogt(semiconjugacy(t))));
            }
        os << "grid_size,max_residual,max_invariant\n";
        os << s_size << ',' << format_double(worst) << ',' << format_double(worst_g) << '\n';
        return 0;
    }

    if (*verify) {
        bool sweeps_ok = true;
        for (const SubCheck& s : run_property_sweeps(seed)) {
            os << "property    " << (s.passed ? "PASS" : "FAIL") << "  " << s.name << '\n';
            sweeps_ok = sweeps_ok && s.passed;
        }
        bool ok = print_results(os, run_all_criteria());
        os << (ok && sweeps_ok ? "all criteria passed\n" : "some criteria failed\n");
        return (ok && sweeps_ok) ? 0 : 2;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fibspec::error& e) {
        std::cerr << "ERROR " << e.exit_code() << ": " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "ERROR 2: " << e.what() << '\n';
        return 2;
    }
}
