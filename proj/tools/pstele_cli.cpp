// pstele: command-line front end for the photon-subtracted TMSV teleportation
// figures of merit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pstele/closed_form.hpp"
#include "pstele/contours.hpp"
#include "pstele/fock_oracle.hpp"
#include "pstele/optimize.hpp"
#include "pstele/oracle_check.hpp"
#include "pstele/sweep.hpp"

namespace {

using json = nlohmann::json;
using namespace pstele;

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
    kValidation = 4,
    kIo = 5,
    kNumerical = 6,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string detector = "spd";
    std::optional<std::string> lambda;
    std::optional<std::string> t;
    std::string eta = "1";
    std::optional<std::string> grid;
    std::optional<std::string> out;
    std::uint64_t seed = oracle_check::Options{}.seed;
    std::optional<int> nmax;
    std::optional<double> tol;
    std::string quantity = "dF";
    double level = 0.0;
    int samples = 25;
    bool json = false;
    bool emit_plot = false;
};

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw UsageError("--grid expects AxB, got '" + text + "'");
    }
}

double parse_value(const std::optional<std::string>& text, const char* flag) {
    if (!text) throw UsageError(std::string(flag) + " is required");
    const sweep::Axis a = sweep::parse_axis(*text, 2);
    if (!a.is_fixed()) throw UsageError(std::string(flag) + " expects a single value here");
    return a.lo;
}

json to_json(const optimize::OptimumRecord& r) {
    return {{"detector", to_string(r.detector)}, {"eta", r.eta},
            {"lambda_star", r.lambda_star},       {"t_star", r.t_star},
            {"r_max", r.r_max},                   {"delta_f", r.delta_f_at_opt},
            {"success_prob", r.p_at_opt},         {"evaluations", r.evaluations},
            {"converged", r.converged}};
}

// Writes to --out when given, otherwise stdout.
template <class Writer>
void emit(const Flags& f, Writer&& write, const std::string& plot_kind) {
    if (!f.out) {
        write(std::cout);
        return;
    }
    std::ofstream os(*f.out, std::ios::binary);
    if (!os) throw IoError("cannot open '" + *f.out + "' for writing");
    write(os);
    os.flush();
    if (!os) throw IoError("failed writing '" + *f.out + "'");
    if (f.emit_plot) {
        const std::string script_path = *f.out + ".py";
        std::ofstream ps(script_path, std::ios::binary);
        if (!ps) throw IoError("cannot open '" + script_path + "' for writing");
        ps << sweep::plot_script(*f.out, plot_kind);
    }
}

int cmd_eval(const Flags& f) {
    ResourceParams p;
    p.detector = parse_detector(f.detector);
    p.lambda = parse_value(f.lambda, "--lambda");
    p.transmissivity = parse_value(f.t, "--T");
    p.eta = parse_value(f.eta, "--eta");
    const Metrics m = closed_form::evaluate(p);
    std::optional<double> n, dn;
    if (p.detector == DetectorKind::Spd && p.eta == 1.0) {
        n = closed_form::mean_photons_spd(p.lambda, p.transmissivity);
        dn = closed_form::delta_mean_photons_spd(p.lambda, p.transmissivity);
    }
    if (f.json) {
        json j = {{"detector", to_string(p.detector)}, {"lambda", p.lambda},
                  {"T", p.transmissivity},              {"eta", p.eta},
                  {"F", m.fidelity},                    {"P", m.success_prob},
                  {"dF", m.delta_f},                    {"R", m.merit}};
        if (n) {
            j["N"] = *n;
            j["dN"] = *dn;
        }
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    auto line = [](const char* key, const std::string& v) {
        std::cout << std::left << std::setw(10) << key << v << '\n';
    };
    line("detector", std::string(to_string(p.detector)));
    line("lambda", sweep::format_double(p.lambda));
    line("T", sweep::format_double(p.transmissivity));
    line("eta", sweep::format_double(p.eta));
    line("F", sweep::format_double(m.fidelity));
    line("P", sweep::format_double(m.success_prob));
    line("dF", sweep::format_double(m.delta_f));
    line("R", sweep::format_double(m.merit));
    if (n) {
        line("N", sweep::format_double(*n));
        line("dN", sweep::format_double(*dn));
    }
    return kOk;
}

int cmd_sweep(const Flags& f) {
    auto [nl, nt] = f.grid ? parse_grid(*f.grid) : std::pair{64, 64};
    sweep::SweepSpec spec;
    spec.detector = parse_detector(f.detector);
    spec.lambda = sweep::parse_axis(f.lambda.value_or("0.01:0.95"), nl);
    spec.t = sweep::parse_axis(f.t.value_or("0.05:0.999"), nt);
    spec.eta = sweep::parse_axis(f.eta, 71);
    const auto rows = sweep::run_sweep(spec);
    emit(f, [&](std::ostream& os) { sweep::write_sweep_csv(os, spec, rows); }, "sweep");
    return kOk;
}

int cmd_contours(const Flags& f) {
    auto [nl, nt] = f.grid ? parse_grid(*f.grid) : std::pair{200, 200};
    contours::ContourGrid grid;
    grid.lambda = sweep::parse_axis(f.lambda.value_or("0.01:0.95"), nl);
    grid.t = sweep::parse_axis(f.t.value_or("0.05:1"), nt);
    const auto q = contours::parse_quantity(f.quantity);
    const auto lines = contours::extract(q, parse_detector(f.detector), parse_value(f.eta, "--eta"),
                                         f.level, grid, f.tol.value_or(1e-8));
    if (lines.empty()) std::cerr << "warning: level " << f.level << " is not crossed on the grid\n";
    emit(f, [&](std::ostream& os) { contours::write_csv(os, lines); }, "contours");
    return kOk;
}

int cmd_fvsn(const Flags& f) {
    const sweep::Axis a = sweep::parse_axis(f.lambda.value_or("0:0.9:181"), 181);
    if (a.is_fixed() || a.lo != 0.0) throw UsageError("fvsn expects --lambda 0:max[:steps]");
    const auto curves = sweep::fidelity_vs_photons(a.hi, a.steps);
    emit(f, [&](std::ostream& os) { sweep::write_fvsn_csv(os, curves); }, "fvsn");
    return kOk;
}

int cmd_optimize(const Flags& f) {
    auto [nl, nt] = f.grid ? parse_grid(*f.grid) : std::pair{256, 256};
    if (nl != nt) throw UsageError("optimize needs a square grid");
    optimize::RefineOptions opts;
    if (f.tol) opts.tol = *f.tol;
    const auto rec = optimize::maximize(parse_detector(f.detector), parse_value(f.eta, "--eta"), nl, opts);
    if (f.json) {
        std::cout << to_json(rec).dump(2) << '\n';
    } else {
        sweep::render_table2(std::cout, sweep::check_table2({rec}));
    }
    return kOk;
}

int cmd_table2(const Flags& f) {
    auto [nl, nt] = f.grid ? parse_grid(*f.grid) : std::pair{256, 256};
    if (nl != nt) throw UsageError("table2 needs a square grid");
    optimize::RefineOptions opts;
    if (f.tol) opts.tol = *f.tol;
    const auto checks = sweep::check_table2(optimize::table2(optimize::default_table2_rows(), nl, opts));
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.within_tolerance;
    if (f.json) {
        json rows = json::array();
        for (const auto& c : checks) {
            json j = to_json(c.record);
            j["within_tolerance"] = c.within_tolerance;
            rows.push_back(j);
        }
        std::cout << rows.dump(2) << '\n';
    } else {
        sweep::render_table2(std::cout, checks);
    }
    return ok ? kOk : kValidation;
}

int cmd_oracle_check(const Flags& f) {
    oracle_check::Options opts;
    opts.samples_per_case = f.samples;
    opts.seed = f.seed;
    opts.n_max = f.nmax;
    if (f.tol) opts.fidelity_tol = *f.tol;
    const auto report = oracle_check::run(opts);
    if (f.json) {
        json cases = json::array();
        for (const auto& c : report.cases)
            cases.push_back({{"detector", to_string(c.detector)},
                             {"eta", c.eta},
                             {"points", c.evaluated},
                             {"errors", c.errors.size()},
                             {"max_fidelity_dev", c.max_fidelity_dev},
                             {"max_probability_dev", c.max_probability_dev},
                             {"passed", c.passed}});
        std::cout << json{{"passed", report.passed()}, {"cases", cases}}.dump(2) << '\n';
    } else {
        oracle_check::print(std::cout, report);
    }
    return report.passed() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Success probability x fidelity enhancement for photon-subtracted TMSV teleportation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value file of flag defaults (flags override it)");

    Flags f;
    app.add_option("--detector", f.detector, "spd or onoff")->capture_default_str();
    app.add_option("--lambda", f.lambda, "squeezing tanh(r): value or lo:hi[:steps]");
    app.add_option("--T", f.t, "subtraction beam-splitter transmissivity: value or lo:hi[:steps]");
    app.add_option("--eta", f.eta, "detector efficiency: value or lo:hi[:steps]")->capture_default_str();
    app.add_option("--grid", f.grid, "grid size AxB");
    app.add_option("--out", f.out, "output path (stdout when omitted)");
    app.add_option("--seed", f.seed, "sampling seed for oracle-check")->capture_default_str();
    app.add_option("--nmax", f.nmax, "fixed Fock cutoff for oracle-check");
    app.add_option("--tol", f.tol, "tolerance (optimize: coordinates, contours: level, oracle-check: fidelity)");
    app.add_option("--quantity", f.quantity, "contour quantity dF or dN")->capture_default_str();
    app.add_option("--level", f.level, "contour level")->capture_default_str();
    app.add_option("--samples", f.samples, "oracle-check points per case")->capture_default_str();
    app.add_flag("--json", f.json, "JSON output for single records");
    app.add_flag("--emit-plot", f.emit_plot, "write a matplotlib script next to --out");

    int (*handler)(const Flags&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Flags&)) {
        app.add_subcommand(name, help)->callback([&handler, fn] { handler = fn; });
    };
    sub("eval", "metrics at one point", cmd_eval);
    sub("sweep", "CSV grid of F, P, dF, R over lambda, T, eta", cmd_sweep);
    sub("contours", "level set of dF or dN as polylines", cmd_contours);
    sub("fvsn", "fidelity against mean photon number for TMSV and a1 a2 TMSV", cmd_fvsn);
    sub("optimize", "maximize R over (lambda, T)", cmd_optimize);
    sub("table2", "optima for the four reference detector rows", cmd_table2);
    sub("oracle-check", "compare closed forms with the Fock-space simulation", cmd_oracle_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return handler ? handler(f) : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kDomain;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const fock::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << '\n';
        return kNumerical;
    } catch (const fock::QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << '\n';
        return kNumerical;
    }
}
