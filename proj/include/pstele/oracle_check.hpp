#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pstele/params.hpp"

namespace pstele::oracle_check {

struct Options {
    int samples_per_case = 25;
    std::uint64_t seed = 20240607;
    std::optional<int> n_max;  // nullopt: automatic cutoff per point
    double fidelity_tol = 1e-6;
    double probability_tol = 1e-8;
    std::vector<double> etas = {1.0, 0.95, 0.6};
    // Sampling box. Keeps the automatic cutoff under its cap.
    double lambda_lo = 0.05, lambda_hi = 0.85;
    double t_lo = 0.5, t_hi = 0.95;
};

struct PointError {
    ResourceParams params;
    std::string message;
};

struct CaseReport {
    DetectorKind detector = DetectorKind::Spd;
    double eta = 1.0;
    int evaluated = 0;
    double max_fidelity_dev = 0.0;
    double max_probability_dev = 0.0;
    int max_n_max = 0;
    std::vector<PointError> errors;
    bool passed = false;
};

struct Report {
    Options options;
    std::vector<CaseReport> cases;
    bool passed() const;
};

/// Draws the same points for the same seed on every platform (mt19937_64
/// plus a fixed 53-bit mapping to [0, 1)).
std::vector<ResourceParams> sample_points(DetectorKind detector, double eta, int count,
                                          std::uint64_t seed, const Options& options);

/// Compares the Fock-space simulation with the closed forms at sampled
/// points for every (detector, eta) case.
Report run(const Options& options);

void print(std::ostream& os, const Report& report);

}  // namespace pstele::oracle_check
