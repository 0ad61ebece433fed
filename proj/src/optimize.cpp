#include "pstele/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pstele/closed_form.hpp"

namespace pstele::optimize {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

void check_bounds(const Bounds& b) {
    check_lambda(b.lambda_min);
    check_lambda(b.lambda_max);
    check_transmissivity(b.t_min);
    check_transmissivity(b.t_max);
    if (b.lambda_min >= b.lambda_max || b.t_min >= b.t_max)
        throw ParameterError("optimize: empty search box");
}

struct Vertex {
    std::array<double, 2> x;
    double f;  // merit, maximized
};

}  // namespace

GridScan grid_scan(DetectorKind detector, double eta, int resolution, Bounds bounds) {
    check_eta(eta);
    check_bounds(bounds);
    if (resolution < 32)
        throw ParameterError("grid_scan: resolution must be at least 32, got " +
                             std::to_string(resolution));
    GridScan scan;
    scan.lambdas = linspace(bounds.lambda_min, bounds.lambda_max, resolution);
    scan.ts = linspace(bounds.t_min, bounds.t_max, resolution);
    scan.values.resize(static_cast<std::size_t>(resolution) * resolution);
    double best = -INFINITY;
    for (std::size_t i = 0; i < scan.lambdas.size(); ++i)
        for (std::size_t j = 0; j < scan.ts.size(); ++j) {
            const double r = closed_form::merit(detector, scan.lambdas[i], scan.ts[j], eta);
            scan.values[i * scan.ts.size() + j] = r;
            if (r > best) {  // strict: first maximum in lambda-major order wins
                best = r;
                scan.best_i = i;
                scan.best_j = j;
            }
        }
    return scan;
}

OptimumRecord refine(DetectorKind detector, double eta, std::pair<double, double> seed,
                     const RefineOptions& options) {
    check_eta(eta);
    const Bounds& b = options.bounds;
    check_bounds(b);
    check_lambda(seed.first);
    check_transmissivity(seed.second);

    OptimumRecord rec;
    rec.detector = detector;
    rec.eta = eta;

    auto project = [&](std::array<double, 2> x) {
        x[0] = std::clamp(x[0], b.lambda_min, b.lambda_max);
        x[1] = std::clamp(x[1], b.t_min, b.t_max);
        return x;
    };
    auto eval = [&](const std::array<double, 2>& x) {
        ++rec.evaluations;
        return closed_form::merit(detector, x[0], x[1], eta);
    };
    auto make = [&](std::array<double, 2> x) {
        x = project(x);
        return Vertex{x, eval(x)};
    };

    const std::array<double, 2> x0 = project({seed.first, seed.second});
    // Step away from a bound when the seed sits on it.
    auto offset = [&](int axis) {
        std::array<double, 2> x = x0;
        const double hi = axis == 0 ? b.lambda_max : b.t_max;
        x[axis] += (x[axis] + options.initial_step <= hi) ? options.initial_step
                                                           : -options.initial_step;
        return x;
    };
    std::array<Vertex, 3> s = {make(x0), make(offset(0)), make(offset(1))};

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    auto converged = [&] {
        double span[2] = {0.0, 0.0};
        for (int axis = 0; axis < 2; ++axis) {
            const auto [lo, hi] = std::minmax({s[0].x[axis], s[1].x[axis], s[2].x[axis]});
            span[axis] = hi - lo;
        }
        const double spread = s[0].f - s[2].f;
        return span[0] < options.tol && span[1] < options.tol &&
               spread <= options.tol * std::abs(s[0].f);
    };

    while (true) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& c) { return a.f > c.f; });
        if (converged()) {
            rec.converged = true;
            break;
        }
        if (rec.evaluations >= options.max_evaluations) break;

        const std::array<double, 2> c = {(s[0].x[0] + s[1].x[0]) / 2.0,
                                         (s[0].x[1] + s[1].x[1]) / 2.0};
        auto along = [&](double k) {
            return std::array<double, 2>{c[0] + k * (s[2].x[0] - c[0]), c[1] + k * (s[2].x[1] - c[1])};
        };
        const Vertex r = make(along(-kReflect));
        if (r.f > s[0].f) {
            const Vertex e = make(along(-kExpand));
            s[2] = e.f > r.f ? e : r;
        } else if (r.f > s[1].f) {
            s[2] = r;
        } else {
            const bool outside = r.f > s[2].f;
            const Vertex k = make(along(outside ? -kContract : kContract));
            if (outside ? k.f >= r.f : k.f > s[2].f) {
                s[2] = k;
            } else {
                for (int v = 1; v < 3; ++v)
                    s[v] = make({s[0].x[0] + kShrink * (s[v].x[0] - s[0].x[0]),
                                 s[0].x[1] + kShrink * (s[v].x[1] - s[0].x[1])});
            }
        }
    }

    rec.lambda_star = s[0].x[0];
    rec.t_star = s[0].x[1];
    rec.r_max = closed_form::merit(detector, rec.lambda_star, rec.t_star, eta);
    rec.delta_f_at_opt = closed_form::delta_fidelity(detector, rec.lambda_star, rec.t_star, eta);
    rec.p_at_opt = closed_form::success_probability(detector, rec.lambda_star, rec.t_star, eta);
    return rec;
}

OptimumRecord maximize(DetectorKind detector, double eta, int resolution,
                       const RefineOptions& options) {
    const GridScan scan = grid_scan(detector, eta, resolution, options.bounds);
    return refine(detector, eta, {scan.best_lambda(), scan.best_t()}, options);
}

std::vector<Table2Row> default_table2_rows() {
    return {{DetectorKind::OnOff, 1.0},
            {DetectorKind::OnOff, 0.60},
            {DetectorKind::Spd, 1.0},
            {DetectorKind::Spd, 0.95}};
}

std::vector<OptimumRecord> table2(const std::vector<Table2Row>& rows, int resolution,
                                  const RefineOptions& options) {
    std::vector<OptimumRecord> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(maximize(row.detector, row.eta, resolution, options));
    return out;
}

}  // namespace pstele::optimize
