#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "pstele/params.hpp"
#include "pstele/sweep.hpp"

namespace pstele::contours {

enum class Quantity { DeltaF, DeltaN };

Quantity parse_quantity(const std::string& text);

/// DeltaF for any detector; DeltaN only for the ideal SPD.
double evaluate(Quantity q, DetectorKind detector, double eta, double lambda, double t);

struct ContourPolyline {
    double level = 0.0;
    std::vector<std::pair<double, double>> points;  // (lambda, T), in path order
    bool closed = false;
};

struct ContourGrid {
    sweep::Axis lambda{0.01, 0.95, 200};
    sweep::Axis t{0.05, 1.0, 200};
};

/// Level set of q by marching squares: sign changes on grid edges are
/// located by bisection until |q - level| < tol, and cell segments are
/// chained into polylines. Empty when the level is never crossed.
std::vector<ContourPolyline> extract(Quantity q, DetectorKind detector, double eta, double level,
                                     const ContourGrid& grid = {}, double tol = 1e-8);

/// Columns polyline,level,lambda,T.
void write_csv(std::ostream& os, const std::vector<ContourPolyline>& lines);

}  // namespace pstele::contours
