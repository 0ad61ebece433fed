#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pstele/closed_form.hpp"
#include "pstele/contours.hpp"
#include "pstele/oracle_check.hpp"
#include "pstele/sweep.hpp"

using namespace pstele;
using namespace pstele::sweep;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("axis parsing") {
    CHECK(parse_axis("0.5", 10).is_fixed());
    const Axis a = parse_axis("0.1:0.9", 5);
    CHECK(a.steps == 5);
    CHECK(a.values().back() == 0.9);
    CHECK(parse_axis("0.3:1:8", 5).steps == 8);
    CHECK_THROWS_AS(parse_axis("abc", 5), ParameterError);
    CHECK_THROWS_AS(parse_axis("0.1:0.2:1", 5), ParameterError);
    CHECK_THROWS_AS(parse_axis("1:2:3:4", 5), ParameterError);
    SweepSpec spec;
    spec.lambda = {0.9, 0.1, 3};
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec.lambda = {0.1, 1.2, 3};
    CHECK_THROWS_AS(spec.validate(), ParameterError);
}

TEST_CASE("sweep CSV") {
    SUBCASE("2 x 2 smoke sweep") {
        SweepSpec spec;
        spec.detector = DetectorKind::Spd;
        spec.lambda = {0.1, 0.5, 2};
        spec.t = {0.7, 0.9, 2};
        std::ostringstream os;
        write_sweep_csv(os, spec, run_sweep(spec));
        const auto rows = parse_csv(os.str());
        REQUIRE(rows.size() == 5);
        CHECK(os.str().rfind("lambda,T,eta,detector,F,P,dF,R,N,dN\n", 0) == 0);
        CHECK(os.str().find('\r') == std::string::npos);
        // lambda-major, then T.
        CHECK(rows[1][0] == "0.10000000000000001");
        CHECK(rows[1][1] == "0.69999999999999996");
        CHECK(rows[2][1] == "0.90000000000000002");
        CHECK(rows[3][0] == "0.5");
        for (std::size_t r = 1; r < rows.size(); ++r) CHECK(rows[r].size() == 10);
    }
    SUBCASE("lossy or on-off sweeps have no photon-number columns") {
        SweepSpec spec;
        spec.detector = DetectorKind::OnOff;
        std::ostringstream os;
        write_sweep_csv(os, spec, run_sweep(spec));
        CHECK(os.str().rfind("lambda,T,eta,detector,F,P,dF,R\n", 0) == 0);
    }
    SUBCASE("values round-trip at printed precision") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ul(0.0, 0.95), ut(0.05, 1.0), ue(0.05, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            SweepSpec spec;
            spec.detector = trial % 2 ? DetectorKind::Spd : DetectorKind::OnOff;
            spec.lambda = Axis::fixed(ul(rng));
            spec.t = Axis::fixed(ut(rng));
            spec.eta = Axis::fixed(ue(rng));
            const auto rows = run_sweep(spec);
            std::ostringstream os;
            write_sweep_csv(os, spec, rows);
            const auto cells = parse_csv(os.str());
            CHECK(std::stod(cells[1][0]) == rows[0].lambda);
            CHECK(std::stod(cells[1][1]) == rows[0].t);
            CHECK(std::stod(cells[1][2]) == rows[0].eta);
            CHECK(std::stod(cells[1][4]) == rows[0].metrics.fidelity);
            CHECK(std::stod(cells[1][5]) == rows[0].metrics.success_prob);
            CHECK(std::stod(cells[1][6]) == rows[0].metrics.delta_f);
            CHECK(std::stod(cells[1][7]) == rows[0].metrics.merit);
        }
    }
}

TEST_CASE("figure sweeps") {
    SUBCASE("fidelity against detector efficiency") {
        for (double t : {0.90, 0.99}) {
            SweepSpec spec;
            spec.lambda = Axis::fixed(0.5);
            spec.t = Axis::fixed(t);
            spec.eta = {0.3, 1.0, 71};
            const auto rows = run_sweep(spec);
            REQUIRE(rows.size() == 71);
            for (std::size_t k = 1; k < rows.size(); ++k)
                CHECK(rows[k].metrics.fidelity >= rows[k - 1].metrics.fidelity);
        }
    }
    SUBCASE("fidelity against squeezing at T = 0.9") {
        SweepSpec spd, onoff;
        spd.lambda = onoff.lambda = {0.01, 0.95, 95};
        spd.t = onoff.t = Axis::fixed(0.9);
        onoff.detector = DetectorKind::OnOff;
        const auto a = run_sweep(spd);
        const auto b = run_sweep(onoff);
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].metrics.fidelity > b[k].metrics.fidelity);
    }
}

TEST_CASE("contours") {
    using contours::Quantity;
    SUBCASE("dF = 0 and dN = 0 for the ideal SPD") {
        const auto df = contours::extract(Quantity::DeltaF, DetectorKind::Spd, 1.0, 0.0);
        const auto dn = contours::extract(Quantity::DeltaN, DetectorKind::Spd, 1.0, 0.0);
        REQUIRE_FALSE(df.empty());
        REQUIRE_FALSE(dn.empty());
        for (const auto& line : df)
            for (auto [l, t] : line.points)
                CHECK(std::abs(closed_form::delta_fidelity(DetectorKind::Spd, l, t, 1.0)) < 1e-8);
        for (const auto& line : dn)
            for (auto [l, t] : line.points) CHECK(std::abs(closed_form::delta_mean_photons_spd(l, t)) < 1e-8);
        // The two curves bound a region with more photons but lower fidelity.
        bool found = false;
        for (double l = 0.01; l < 0.95 && !found; l += 0.01)
            for (double t = 0.05; t <= 1.0 && !found; t += 0.01)
                found = closed_form::delta_mean_photons_spd(l, t) > 0.0 &&
                        closed_form::delta_fidelity(DetectorKind::Spd, l, t, 1.0) < 0.0;
        CHECK(found);
    }
    SUBCASE("polylines are ordered paths") {
        contours::ContourGrid grid;
        grid.lambda = {0.01, 0.95, 60};
        grid.t = {0.05, 1.0, 60};
        const auto lines = contours::extract(Quantity::DeltaF, DetectorKind::Spd, 1.0, 0.0, grid);
        REQUIRE(lines.size() >= 1);
        const double cell = std::hypot(0.94 / 59, 0.95 / 59);
        for (const auto& line : lines)
            for (std::size_t k = 1; k < line.points.size(); ++k)
                CHECK(std::hypot(line.points[k].first - line.points[k - 1].first,
                                 line.points[k].second - line.points[k - 1].second) <= cell * 1.0001);
    }
    SUBCASE("unreached level gives no polylines") {
        CHECK(contours::extract(Quantity::DeltaF, DetectorKind::OnOff, 1.0, 5.0).empty());
    }
    SUBCASE("dN needs the ideal SPD") {
        CHECK_THROWS_AS(contours::extract(Quantity::DeltaN, DetectorKind::OnOff, 1.0, 0.0), ParameterError);
        CHECK_THROWS_AS(contours::parse_quantity("R"), ParameterError);
    }
    SUBCASE("CSV layout") {
        std::ostringstream os;
        contours::write_csv(os, {{0.0, {{0.5, 0.25}, {0.6, 0.3}}, false}});
        CHECK(os.str() == "polyline,level,lambda,T\n0,0,0.5,0.25\n0,0,0.59999999999999998,0.29999999999999999\n");
    }
}

TEST_CASE("fidelity against mean photon number") {
    const auto curves = fidelity_vs_photons();
    CHECK(curves.tmsv.front().mean_photons == 0.0);
    CHECK(curves.tmsv.front().fidelity == 0.5);
    CHECK(curves.sps.front().mean_photons == 0.0);
    CHECK(curves.sps.front().fidelity == 0.5);
    for (const auto* c : {&curves.tmsv, &curves.sps})
        for (std::size_t k = 1; k < c->size(); ++k) {
            CHECK((*c)[k].mean_photons > (*c)[k - 1].mean_photons);
            CHECK((*c)[k].fidelity > (*c)[k - 1].fidelity);
        }
    int matched = 0;
    for (const auto& p : curves.sps)
        if (auto f = interpolate_fidelity(curves.tmsv, p.mean_photons)) {
            CHECK(*f >= p.fidelity - 1e-12);
            ++matched;
        }
    CHECK(matched > 100);
    std::ostringstream os;
    write_fvsn_csv(os, curves);
    CHECK(parse_csv(os.str()).size() == 1 + curves.tmsv.size() + curves.sps.size());
    CHECK(os.str().rfind("N,F,state\n0,0.5,tmsv\n", 0) == 0);
}

TEST_CASE("table2 report") {
    optimize::OptimumRecord rec;
    rec.detector = DetectorKind::Spd;
    rec.eta = 1.0;
    rec.lambda_star = 0.562;
    rec.t_star = 0.767;
    rec.r_max = 9.50e-4;
    rec.converged = true;
    auto checks = check_table2({rec});
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].reference.has_value());
    CHECK(checks[0].within_tolerance);
    rec.t_star = 0.80;
    CHECK_FALSE(check_table2({rec})[0].within_tolerance);
    rec.t_star = 0.767;
    rec.r_max = 8.0e-4;
    CHECK_FALSE(check_table2({rec})[0].within_tolerance);
    rec.eta = 0.5;
    CHECK_FALSE(check_table2({rec})[0].reference.has_value());

    std::ostringstream os;
    render_table2(os, checks);
    CHECK(os.str().find("SPD (eta=1)") != std::string::npos);
    CHECK(os.str().find("reference") != std::string::npos);
}

TEST_CASE("oracle check harness") {
    oracle_check::Options opts;
    SUBCASE("sampling is deterministic and inside the box") {
        const auto a = oracle_check::sample_points(DetectorKind::Spd, 0.6, 10, 42, opts);
        const auto b = oracle_check::sample_points(DetectorKind::Spd, 0.6, 10, 42, opts);
        const auto c = oracle_check::sample_points(DetectorKind::OnOff, 0.6, 10, 42, opts);
        for (int k = 0; k < 10; ++k) {
            CHECK(a[k].lambda == b[k].lambda);
            CHECK(a[k].transmissivity == b[k].transmissivity);
            CHECK(a[k].lambda != c[k].lambda);
            CHECK(a[k].lambda >= opts.lambda_lo);
            CHECK(a[k].lambda < opts.lambda_hi);
            CHECK(a[k].transmissivity >= opts.t_lo);
            CHECK(a[k].transmissivity < opts.t_hi);
        }
    }
    SUBCASE("small run passes") {
        opts.samples_per_case = 2;
        const auto report = oracle_check::run(opts);
        CHECK(report.cases.size() == 6);
        CHECK(report.passed());
        std::ostringstream os;
        oracle_check::print(os, report);
        CHECK(os.str().find("oracle-check PASSED") != std::string::npos);
    }
    SUBCASE("a cutoff that is too small surfaces per point") {
        opts.samples_per_case = 2;
        opts.n_max = 3;
        opts.etas = {1.0};
        const auto report = oracle_check::run(opts);
        CHECK_FALSE(report.passed());
        for (const auto& c : report.cases) CHECK(c.errors.size() == 2);
        std::ostringstream os;
        oracle_check::print(os, report);
        CHECK(os.str().find("truncation overflow") != std::string::npos);
    }
}

TEST_CASE("plot scripts reference their CSV") {
    for (const char* kind : {"sweep", "contours", "fvsn"}) {
        const auto s = plot_script("out.csv", kind);
        CHECK(s.find("\"out.csv\"") != std::string::npos);
        CHECK(s.find("savefig") != std::string::npos);
    }
}
