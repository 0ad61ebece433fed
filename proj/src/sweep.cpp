#include "pstele/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "pstele/closed_form.hpp"

namespace pstele::sweep {

std::vector<double> Axis::values() const {
    if (steps == 1) return {lo};
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
    v.back() = hi;
    return v;
}

void Axis::validate(const char* name) const {
    if (steps < 1) throw ParameterError(std::string(name) + ": steps must be positive");
    if (steps == 1 && lo != hi)
        throw ParameterError(std::string(name) + ": a range needs at least 2 steps");
    if (steps > 1 && !(lo < hi))
        throw ParameterError(std::string(name) + ": range must satisfy lo < hi");
}

Axis parse_axis(const std::string& text, int default_steps) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ParameterError("not a number: '" + s + "'");
        return v;
    };
    if (parts.size() == 1) return Axis::fixed(number(parts[0]));
    if (parts.size() == 2 || parts.size() == 3) {
        Axis a{number(parts[0]), number(parts[1]), default_steps};
        if (parts.size() == 3) {
            const double steps = number(parts[2]);
            if (steps != std::floor(steps) || steps < 2 || steps > 1e6)
                throw ParameterError("range steps must be an integer >= 2: '" + parts[2] + "'");
            a.steps = static_cast<int>(steps);
        }
        return a;
    }
    throw ParameterError("expected value, lo:hi or lo:hi:steps, got '" + text + "'");
}

void SweepSpec::validate() const {
    lambda.validate("lambda");
    t.validate("T");
    eta.validate("eta");
    check_lambda(lambda.lo);
    check_lambda(lambda.hi);
    check_transmissivity(t.lo);
    check_transmissivity(t.hi);
    check_eta(eta.lo);
    check_eta(eta.hi);
}

bool SweepSpec::emits_photon_numbers() const {
    return photon_numbers && detector == DetectorKind::Spd && eta.is_fixed() && eta.lo == 1.0;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const bool with_n = spec.emits_photon_numbers();
    std::vector<SweepRow> rows;
    for (double l : spec.lambda.values())
        for (double t : spec.t.values())
            for (double e : spec.eta.values()) {
                SweepRow row;
                row.lambda = l;
                row.t = t;
                row.eta = e;
                row.detector = spec.detector;
                row.metrics = closed_form::evaluate({l, t, e, spec.detector});
                if (with_n) {
                    row.mean_photons = closed_form::mean_photons_spd(l, t);
                    row.delta_mean_photons = closed_form::delta_mean_photons_spd(l, t);
                }
                rows.push_back(row);
            }
    return rows;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    const bool with_n = spec.emits_photon_numbers();
    os << "lambda,T,eta,detector,F,P,dF,R" << (with_n ? ",N,dN" : "") << '\n';
    for (const auto& r : rows) {
        os << format_double(r.lambda) << ',' << format_double(r.t) << ',' << format_double(r.eta)
           << ',' << to_string(r.detector) << ',' << format_double(r.metrics.fidelity) << ','
           << format_double(r.metrics.success_prob) << ',' << format_double(r.metrics.delta_f)
           << ',' << format_double(r.metrics.merit);
        if (with_n)
            os << ',' << format_double(r.mean_photons.value_or(NAN)) << ','
               << format_double(r.delta_mean_photons.value_or(NAN));
        os << '\n';
    }
}

FidelityPhotonCurves fidelity_vs_photons(double lambda_max, int steps) {
    check_lambda(lambda_max);
    if (steps < 2) throw ParameterError("fidelity_vs_photons: need at least 2 steps");
    FidelityPhotonCurves curves;
    for (int i = 0; i < steps; ++i) {
        const double l = lambda_max * i / (steps - 1);
        curves.tmsv.push_back({closed_form::mean_photons_tmsv(l), closed_form::fidelity_tmsv(l)});
        curves.sps.push_back({closed_form::mean_photons_spd(l, 1.0), closed_form::fidelity_spd(l, 1.0)});
    }
    return curves;
}

void write_fvsn_csv(std::ostream& os, const FidelityPhotonCurves& curves) {
    os << "N,F,state\n";
    for (const auto& p : curves.tmsv)
        os << format_double(p.mean_photons) << ',' << format_double(p.fidelity) << ",tmsv\n";
    for (const auto& p : curves.sps)
        os << format_double(p.mean_photons) << ',' << format_double(p.fidelity) << ",sps\n";
}

std::optional<double> interpolate_fidelity(const std::vector<PhotonFidelityPoint>& curve, double n) {
    if (curve.empty() || n < curve.front().mean_photons || n > curve.back().mean_photons)
        return std::nullopt;
    auto hi = std::lower_bound(curve.begin(), curve.end(), n,
                               [](const PhotonFidelityPoint& p, double v) { return p.mean_photons < v; });
    if (hi == curve.begin()) return hi->fidelity;
    auto lo = std::prev(hi);
    const double w = (n - lo->mean_photons) / (hi->mean_photons - lo->mean_photons);
    return lo->fidelity + w * (hi->fidelity - lo->fidelity);
}

std::vector<ReferenceOptimum> reference_optima() {
    return {
        {DetectorKind::OnOff, 1.0, 3.9, 0.49, 0.84, 0.033, 0.12, 0.05},
        {DetectorKind::OnOff, 0.60, 1.1, 0.47, 0.85, 0.032, 0.04, 0.10},
        {DetectorKind::Spd, 1.0, 9.5, 0.56, 0.77, 0.037, 0.26, 0.05},
        {DetectorKind::Spd, 0.95, 7.6, 0.55, 0.77, 0.036, 0.21, 0.05},
    };
}

std::vector<Table2Check> check_table2(const std::vector<optimize::OptimumRecord>& records) {
    const auto refs = reference_optima();
    std::vector<Table2Check> out;
    for (const auto& rec : records) {
        Table2Check row{rec, std::nullopt, true};
        for (const auto& ref : refs)
            if (ref.detector == rec.detector && ref.eta == rec.eta) row.reference = ref;
        if (row.reference) {
            const auto& ref = *row.reference;
            const double r_e4 = rec.r_max * 1e4;
            row.within_tolerance =
                std::abs(r_e4 - ref.r_max_e4) <= ref.r_rel_tol * ref.r_max_e4 &&
                std::abs(rec.lambda_star - ref.lambda) <= kOptimumCoordinateTol &&
                std::abs(rec.t_star - ref.t) <= kOptimumCoordinateTol;
        }
        out.push_back(row);
    }
    return out;
}

void render_table2(std::ostream& os, const std::vector<Table2Check>& rows) {
    auto label = [](DetectorKind d, double eta) {
        std::ostringstream s;
        s << (d == DetectorKind::Spd ? "SPD" : "ON-OFF") << " (eta=" << eta << ")";
        return s.str();
    };
    os << std::left << std::setw(20) << "row" << std::right << std::setw(12) << "1e4*Rmax"
       << std::setw(9) << "lambda" << std::setw(9) << "T" << std::setw(9) << "dF" << std::setw(9)
       << "10*P" << std::setw(8) << "evals" << "  status\n";
    os << std::fixed;
    for (const auto& row : rows) {
        const auto& r = row.record;
        os << std::left << std::setw(20) << label(r.detector, r.eta) << std::right
           << std::setprecision(3) << std::setw(12) << r.r_max * 1e4 << std::setw(9)
           << r.lambda_star << std::setw(9) << r.t_star << std::setprecision(4) << std::setw(9)
           << r.delta_f_at_opt << std::setprecision(3) << std::setw(9) << r.p_at_opt * 10.0
           << std::setw(8) << r.evaluations << "  " << (r.converged ? "converged" : "budget");
        if (row.reference) os << (row.within_tolerance ? ", ok" : ", MISMATCH");
        os << '\n';
        if (row.reference) {
            const auto& ref = *row.reference;
            os << std::left << std::setw(20) << "  reference" << std::right << std::setprecision(3)
               << std::setw(12) << ref.r_max_e4 << std::setprecision(2) << std::setw(9)
               << ref.lambda << std::setw(9) << ref.t << std::setprecision(4) << std::setw(9)
               << ref.delta_f << std::setprecision(3) << std::setw(9) << ref.p_e1 << '\n';
            os << std::left << std::setw(20) << "  deviation" << std::right << std::setprecision(1)
               << std::setw(11) << 100.0 * (r.r_max * 1e4 - ref.r_max_e4) / ref.r_max_e4 << '%'
               << std::setprecision(3) << std::setw(9) << r.lambda_star - ref.lambda << std::setw(9)
               << r.t_star - ref.t << std::setprecision(4) << std::setw(9)
               << r.delta_f_at_opt - ref.delta_f << std::setprecision(3) << std::setw(9)
               << r.p_at_opt * 10.0 - ref.p_e1 << '\n';
        }
    }
    os.unsetf(std::ios::floatfield);
}

std::string plot_script(const std::string& csv_path, const std::string& kind) {
    std::ostringstream s;
    s << "import pandas as pd\nimport matplotlib.pyplot as plt\n\n"
      << "df = pd.read_csv(" << std::quoted(csv_path) << ")\n";
    if (kind == "fvsn") {
        s << "for state, g in df.groupby('state'):\n"
             "    plt.plot(g['N'], g['F'], label=state)\n"
             "plt.xlabel('<N>'); plt.ylabel('F'); plt.legend()\n";
    } else if (kind == "contours") {
        s << "for pid, g in df.groupby('polyline'):\n"
             "    plt.plot(g['lambda'], g['T'])\n"
             "plt.xlabel('lambda'); plt.ylabel('T')\n";
    } else {
        s << "cols = [c for c in ('lambda', 'T', 'eta') if df[c].nunique() > 1]\n"
             "if len(cols) == 2:\n"
             "    piv = df.pivot_table(index=cols[1], columns=cols[0], values='R')\n"
             "    cs = plt.contour(piv.columns, piv.index, piv.values, 12)\n"
             "    plt.clabel(cs); plt.xlabel(cols[0]); plt.ylabel(cols[1])\n"
             "else:\n"
             "    x = cols[0] if cols else 'lambda'\n"
             "    plt.plot(df[x], df['F']); plt.xlabel(x); plt.ylabel('F')\n";
    }
    s << "plt.savefig(" << std::quoted(csv_path + ".png") << ", dpi=150)\n";
    return s.str();
}

}  // namespace pstele::sweep
