#include "pstele/contours.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "pstele/closed_form.hpp"

namespace pstele::contours {

Quantity parse_quantity(const std::string& text) {
    if (text == "dF" || text == "deltaF" || text == "df") return Quantity::DeltaF;
    if (text == "dN" || text == "deltaN" || text == "dn") return Quantity::DeltaN;
    throw ParameterError("unknown contour quantity '" + text + "' (expected dF or dN)");
}

double evaluate(Quantity q, DetectorKind detector, double eta, double lambda, double t) {
    switch (q) {
        case Quantity::DeltaF: return closed_form::delta_fidelity(detector, lambda, t, eta);
        case Quantity::DeltaN:
            if (detector != DetectorKind::Spd || eta != 1.0)
                throw ParameterError("dN contours exist only for the ideal SPD");
            return closed_form::delta_mean_photons_spd(lambda, t);
    }
    throw ParameterError("unknown contour quantity");
}

namespace {

using Point = std::pair<double, double>;

// Edge ids: horizontal edge (i,j)-(i+1,j) -> 2*(i*nt+j); vertical edge
// (i,j)-(i,j+1) -> 2*(i*nt+j)+1.
struct Marcher {
    Quantity q;
    DetectorKind detector;
    double eta;
    double level;
    double tol;
    std::vector<double> ls, ts, vals;
    std::map<long, Point> crossings;

    double f(double l, double t) const { return evaluate(q, detector, eta, l, t) - level; }
    double v(std::size_t i, std::size_t j) const { return vals[i * ts.size() + j]; }
    bool above(std::size_t i, std::size_t j) const { return v(i, j) >= 0.0; }

    Point bisect(Point a, double fa, Point b) const {
        Point mid = a;
        for (int it = 0; it < 200; ++it) {
            mid = {(a.first + b.first) / 2.0, (a.second + b.second) / 2.0};
            const double fm = f(mid.first, mid.second);
            if (std::abs(fm) < tol) break;
            if ((fm >= 0.0) == (fa >= 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return mid;
    }

    long edge_id(std::size_t i, std::size_t j, bool vertical) const {
        return 2L * static_cast<long>(i * ts.size() + j) + (vertical ? 1 : 0);
    }

    long crossing(std::size_t i, std::size_t j, bool vertical) {
        const long id = edge_id(i, j, vertical);
        if (!crossings.count(id)) {
            const std::size_t i2 = vertical ? i : i + 1;
            const std::size_t j2 = vertical ? j + 1 : j;
            crossings[id] = bisect({ls[i], ts[j]}, v(i, j), {ls[i2], ts[j2]});
        }
        return id;
    }
};

}  // namespace

std::vector<ContourPolyline> extract(Quantity q, DetectorKind detector, double eta, double level,
                                     const ContourGrid& grid, double tol) {
    grid.lambda.validate("lambda");
    grid.t.validate("T");
    if (grid.lambda.steps < 2 || grid.t.steps < 2)
        throw ParameterError("contour grid needs at least 2 steps per axis");
    Marcher mc{q, detector, eta, level, tol, grid.lambda.values(), grid.t.values(), {}, {}};
    mc.vals.resize(mc.ls.size() * mc.ts.size());
    for (std::size_t i = 0; i < mc.ls.size(); ++i)
        for (std::size_t j = 0; j < mc.ts.size(); ++j)
            mc.vals[i * mc.ts.size() + j] = mc.f(mc.ls[i], mc.ts[j]);

    // Segments as pairs of edge ids.
    std::vector<std::pair<long, long>> segments;
    for (std::size_t i = 0; i + 1 < mc.ls.size(); ++i)
        for (std::size_t j = 0; j + 1 < mc.ts.size(); ++j) {
            // Corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1).
            const int code = (mc.above(i, j) ? 1 : 0) | (mc.above(i + 1, j) ? 2 : 0) |
                             (mc.above(i + 1, j + 1) ? 4 : 0) | (mc.above(i, j + 1) ? 8 : 0);
            if (code == 0 || code == 15) continue;
            auto bottom = [&] { return mc.crossing(i, j, false); };
            auto right = [&] { return mc.crossing(i + 1, j, true); };
            auto top = [&] { return mc.crossing(i, j + 1, false); };
            auto left = [&] { return mc.crossing(i, j, true); };
            switch (code) {
                case 1: case 14: segments.emplace_back(left(), bottom()); break;
                case 2: case 13: segments.emplace_back(bottom(), right()); break;
                case 3: case 12: segments.emplace_back(left(), right()); break;
                case 4: case 11: segments.emplace_back(right(), top()); break;
                case 6: case 9: segments.emplace_back(bottom(), top()); break;
                case 7: case 8: segments.emplace_back(left(), top()); break;
                case 5: case 10: {
                    const double centre = mc.f((mc.ls[i] + mc.ls[i + 1]) / 2.0,
                                               (mc.ts[j] + mc.ts[j + 1]) / 2.0);
                    const bool centre_above = centre >= 0.0;
                    // The centre joins the corners that share its side.
                    if ((code == 5) == centre_above) {
                        segments.emplace_back(left(), top());
                        segments.emplace_back(bottom(), right());
                    } else {
                        segments.emplace_back(left(), bottom());
                        segments.emplace_back(right(), top());
                    }
                    break;
                }
                default: break;
            }
        }

    // Chain segments through shared edge crossings.
    std::map<long, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        by_edge[segments[s].first].push_back(s);
        by_edge[segments[s].second].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    auto next_segment = [&](long edge) -> std::optional<std::size_t> {
        for (std::size_t s : by_edge[edge])
            if (!used[s]) return s;
        return std::nullopt;
    };
    auto other = [&](std::size_t s, long edge) {
        return segments[s].first == edge ? segments[s].second : segments[s].first;
    };

    std::vector<ContourPolyline> lines;
    auto trace = [&](std::size_t start) {
        used[start] = true;
        std::vector<long> path = {segments[start].first, segments[start].second};
        for (long e = path.back(); auto s = next_segment(e);) {
            used[*s] = true;
            e = other(*s, e);
            path.push_back(e);
        }
        for (long e = path.front(); auto s = next_segment(e);) {
            used[*s] = true;
            e = other(*s, e);
            path.insert(path.begin(), e);
        }
        ContourPolyline line;
        line.level = level;
        line.closed = path.size() > 2 && path.front() == path.back();
        if (line.closed) path.pop_back();
        for (long e : path) line.points.push_back(mc.crossings.at(e));
        lines.push_back(std::move(line));
    };
    // Open polylines start at an endpoint; loops anywhere.
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s] && (by_edge[segments[s].first].size() == 1 || by_edge[segments[s].second].size() == 1))
            trace(s);
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) trace(s);
    return lines;
}

void write_csv(std::ostream& os, const std::vector<ContourPolyline>& lines) {
    os << "polyline,level,lambda,T\n";
    for (std::size_t k = 0; k < lines.size(); ++k)
        for (const auto& [l, t] : lines[k].points)
            os << k << ',' << sweep::format_double(lines[k].level) << ',' << sweep::format_double(l)
               << ',' << sweep::format_double(t) << '\n';
}

}  // namespace pstele::contours
