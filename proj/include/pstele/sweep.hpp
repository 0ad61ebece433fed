#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pstele/optimize.hpp"
#include "pstele/params.hpp"

namespace pstele::sweep {

/// Uniform samples lo..hi inclusive. steps == 1 means the fixed value lo
/// (and requires hi == lo); otherwise steps >= 2.
struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    static Axis fixed(double v) { return {v, v, 1}; }
    bool is_fixed() const { return steps == 1; }
    std::vector<double> values() const;
    void validate(const char* name) const;
};

/// Parses "v", "lo:hi" or "lo:hi:steps"; default_steps applies to "lo:hi".
Axis parse_axis(const std::string& text, int default_steps);

struct SweepSpec {
    DetectorKind detector = DetectorKind::Spd;
    Axis lambda = Axis::fixed(0.5);
    Axis t = Axis::fixed(0.9);
    Axis eta = Axis::fixed(1.0);
    /// Append N,dN columns. Only honoured for SPD with eta fixed at 1, the
    /// only case with a closed-form mean photon number.
    bool photon_numbers = true;

    void validate() const;
    bool emits_photon_numbers() const;
};

struct SweepRow {
    double lambda = 0.0;
    double t = 0.0;
    double eta = 1.0;
    DetectorKind detector = DetectorKind::Spd;
    Metrics metrics;
    std::optional<double> mean_photons;
    std::optional<double> delta_mean_photons;
};

/// Rows ordered lambda-major, then T, then eta.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Header lambda,T,eta,detector,F,P,dF,R[,N,dN]; 17 significant digits; LF.
void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// %.17g: enough digits to round-trip any double.
std::string format_double(double v);

struct PhotonFidelityPoint {
    double mean_photons;
    double fidelity;
};

struct FidelityPhotonCurves {
    std::vector<PhotonFidelityPoint> tmsv;
    std::vector<PhotonFidelityPoint> sps;  // T = 1, i.e. a1 a2 |TMSV>
};

/// Parametric curves in lambda over [0, lambda_max].
FidelityPhotonCurves fidelity_vs_photons(double lambda_max = 0.9, int steps = 181);

/// Columns N,F,state with state in {tmsv, sps}.
void write_fvsn_csv(std::ostream& os, const FidelityPhotonCurves& curves);

/// Linear interpolation of F at mean photon number n on a curve sorted by
/// mean photon number. Returns nullopt outside the curve's range.
std::optional<double> interpolate_fidelity(const std::vector<PhotonFidelityPoint>& curve, double n);

/// Published optimum for one row, used for the side-by-side comparison.
struct ReferenceOptimum {
    DetectorKind detector;
    double eta;
    double r_max_e4;   // 10^4 R_max
    double lambda;
    double t;
    double delta_f;
    double p_e1;       // 10 P
    double r_rel_tol;  // allowed relative deviation of R_max
};

std::vector<ReferenceOptimum> reference_optima();

/// Coordinates must agree within this absolute distance.
inline constexpr double kOptimumCoordinateTol = 0.02;

struct Table2Check {
    optimize::OptimumRecord record;
    std::optional<ReferenceOptimum> reference;
    bool within_tolerance = true;
};

std::vector<Table2Check> check_table2(const std::vector<optimize::OptimumRecord>& records);

/// Aligned table with reference values and relative deviations.
void render_table2(std::ostream& os, const std::vector<Table2Check>& rows);

/// Minimal matplotlib script that plots a CSV written by this tool.
std::string plot_script(const std::string& csv_path, const std::string& kind);

}  // namespace pstele::sweep
