#include "pstele/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>

#include "pstele/closed_form.hpp"
#include "pstele/fock_oracle.hpp"

namespace pstele::oracle_check {

bool Report::passed() const {
    return !cases.empty() &&
           std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.passed; });
}

std::vector<ResourceParams> sample_points(DetectorKind detector, double eta, int count,
                                          std::uint64_t seed, const Options& options) {
    // Each case gets its own stream so adding cases leaves others unchanged.
    const std::uint64_t case_key =
        (detector == DetectorKind::Spd ? 0x9e3779b97f4a7c15ULL : 0xc2b2ae3d27d4eb4fULL) ^
        static_cast<std::uint64_t>(std::llround(eta * 1e6));
    std::mt19937_64 rng(seed ^ case_key);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<ResourceParams> pts;
    for (int k = 0; k < count; ++k) {
        ResourceParams p;
        p.lambda = options.lambda_lo + (options.lambda_hi - options.lambda_lo) * uniform();
        p.transmissivity = options.t_lo + (options.t_hi - options.t_lo) * uniform();
        p.eta = eta;
        p.detector = detector;
        pts.push_back(p);
    }
    return pts;
}

Report run(const Options& options) {
    if (options.samples_per_case < 1) throw ParameterError("oracle-check: need at least one sample");
    Report report;
    report.options = options;
    for (DetectorKind det : {DetectorKind::Spd, DetectorKind::OnOff})
        for (double eta : options.etas) {
            CaseReport c;
            c.detector = det;
            c.eta = eta;
            for (const auto& p : sample_points(det, eta, options.samples_per_case, options.seed, options)) {
                try {
                    const auto sim = fock::simulate(p, options.n_max);
                    const double f = closed_form::fidelity(det, p.lambda, p.transmissivity, eta);
                    const double pr = closed_form::success_probability(det, p.lambda, p.transmissivity, eta);
                    c.max_fidelity_dev = std::max(c.max_fidelity_dev, std::abs(sim.fidelity - f));
                    c.max_probability_dev = std::max(c.max_probability_dev, std::abs(sim.herald_prob - pr));
                    c.max_n_max = std::max(c.max_n_max, sim.n_max);
                    ++c.evaluated;
                } catch (const std::exception& e) {
                    c.errors.push_back({p, e.what()});
                }
            }
            c.passed = c.errors.empty() && c.max_fidelity_dev < options.fidelity_tol &&
                       c.max_probability_dev < options.probability_tol;
            report.cases.push_back(std::move(c));
        }
    return report;
}

void print(std::ostream& os, const Report& report) {
    const auto& o = report.options;
    os << "oracle-check: " << o.samples_per_case << " points per case, seed " << o.seed << ", n_max "
       << (o.n_max ? std::to_string(*o.n_max) : std::string("auto")) << "\n";
    os << std::left << std::setw(8) << "detector" << std::right << std::setw(7) << "eta"
       << std::setw(8) << "points" << std::setw(14) << "max|dF|" << std::setw(14) << "max|dP|"
       << std::setw(7) << "n_max" << "  result\n";
    for (const auto& c : report.cases) {
        os << std::left << std::setw(8) << to_string(c.detector) << std::right << std::fixed
           << std::setprecision(2) << std::setw(7) << c.eta << std::setw(8) << c.evaluated
           << std::scientific << std::setprecision(3) << std::setw(14) << c.max_fidelity_dev
           << std::setw(14) << c.max_probability_dev << std::setw(7) << c.max_n_max << "  "
           << (c.passed ? "PASS" : "FAIL") << '\n';
        os.unsetf(std::ios::floatfield);
        for (const auto& e : c.errors)
            os << "    error at lambda=" << e.params.lambda << " T=" << e.params.transmissivity
               << ": " << e.message << '\n';
    }
    os << "tolerances: fidelity " << o.fidelity_tol << ", probability " << o.probability_tol << '\n';
    os << (report.passed() ? "oracle-check PASSED" : "oracle-check FAILED") << '\n';
}

}  // namespace pstele::oracle_check
