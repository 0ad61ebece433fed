#pragma once

#include <utility>
#include <vector>

#include "pstele/params.hpp"

namespace pstele::optimize {

/// Search box for (lambda, T). Stays clear of the lambda -> 1 singularity
/// and the T -> 1 edge where the success probability vanishes.
struct Bounds {
    double lambda_min = 0.01;
    double lambda_max = 0.95;
    double t_min = 0.05;
    double t_max = 0.999;
};

struct GridScan {
    std::vector<double> lambdas;
    std::vector<double> ts;
    std::vector<double> values;  // lambda-major: values[i * ts.size() + j]
    std::size_t best_i = 0;
    std::size_t best_j = 0;

    double best_lambda() const { return lambdas[best_i]; }
    double best_t() const { return ts[best_j]; }
    double best_value() const { return values[best_i * ts.size() + best_j]; }
};

/// Merit on a uniform resolution x resolution grid. Ties resolve to the
/// lexicographically smallest (lambda, T).
GridScan grid_scan(DetectorKind detector, double eta, int resolution = 256, Bounds bounds = {});

struct RefineOptions {
    double tol = 1e-10;
    int max_evaluations = 500;
    double initial_step = 0.02;
    Bounds bounds = {};
};

struct OptimumRecord {
    DetectorKind detector = DetectorKind::Spd;
    double eta = 1.0;
    double lambda_star = 0.0;
    double t_star = 0.0;
    double r_max = 0.0;
    double delta_f_at_opt = 0.0;
    double p_at_opt = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead maximization of the merit from seed, with every trial point
/// projected into the bounds. Converged once the simplex extent is below
/// tol in both coordinates and the merit spread is below tol * |R|.
OptimumRecord refine(DetectorKind detector, double eta, std::pair<double, double> seed,
                     const RefineOptions& options = {});

/// grid_scan followed by refine from the best cell.
OptimumRecord maximize(DetectorKind detector, double eta, int resolution = 256,
                       const RefineOptions& options = {});

struct Table2Row {
    DetectorKind detector;
    double eta;
};

/// (OnOff, 1), (OnOff, 0.60), (Spd, 1), (Spd, 0.95).
std::vector<Table2Row> default_table2_rows();

std::vector<OptimumRecord> table2(const std::vector<Table2Row>& rows = default_table2_rows(),
                                  int resolution = 256, const RefineOptions& options = {});

}  // namespace pstele::optimize
