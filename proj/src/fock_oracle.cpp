#include "pstele/fock_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "pstele/displacement.hpp"
#include "pstele/quadrature.hpp"

namespace pstele::fock {

namespace {

// Components below this normalized weight do not enter the fidelity sum.
constexpr double kPruneWeight = 1e-15;

void check_cutoff(FockCutoff cutoff) {
    if (cutoff.n_max < 1 || cutoff.n_max > 4 * kMaxCutoff)
        throw ParameterError("n_max must lie in [1, " + std::to_string(4 * kMaxCutoff) +
                             "], got " + std::to_string(cutoff.n_max));
}

double binomial(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

double FockCutoff::tail_bound(double lambda, int n_max) {
    return std::pow(lambda * lambda, n_max + 1);
}

FockCutoff FockCutoff::for_lambda(double lambda, double tail_tol, int floor, int cap) {
    check_lambda(lambda);
    int n = std::max(floor, 1);
    while (tail_bound(lambda, n) >= tail_tol) {
        if (++n > cap)
            throw TruncationError("lambda = " + std::to_string(lambda) +
                                  " needs n_max above the cap of " + std::to_string(cap));
    }
    return {n};
}

TwoModeState::TwoModeState(FockCutoff cutoff)
    : n_max_(cutoff.n_max),
      coeffs_(static_cast<std::size_t>(cutoff.n_max + 1) * (cutoff.n_max + 1), 0.0) {
    check_cutoff(cutoff);
}

double TwoModeState::norm2() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return s;
}

TwoModeState tmsv_coeffs(double lambda, FockCutoff cutoff, std::optional<double> tail_tol) {
    check_lambda(lambda);
    TwoModeState state(cutoff);
    const double tail = FockCutoff::tail_bound(lambda, cutoff.n_max);
    if (tail_tol && tail > *tail_tol)
        throw TruncationError("n_max = " + std::to_string(cutoff.n_max) +
                              " drops TMSV mass " + std::to_string(tail) +
                              " above tolerance " + std::to_string(*tail_tol));
    double c = std::sqrt(1.0 - lambda * lambda);
    for (int n = 0; n <= cutoff.n_max; ++n) {
        state(n, n) = c;
        c *= lambda;
    }
    state.truncated_mass = tail;
    return state;
}

DetectorPovm build_povm(DetectorKind detector, double eta, FockCutoff cutoff) {
    check_eta(eta);
    check_cutoff(cutoff);
    DetectorPovm povm;
    povm.weights.resize(cutoff.n_max + 1);
    const double miss = 1.0 - eta;
    for (int n = 0; n <= cutoff.n_max; ++n) {
        switch (detector) {
            case DetectorKind::Spd:
                povm.weights[n] = n == 0 ? 0.0 : n * eta * std::pow(miss, n - 1);
                break;
            case DetectorKind::OnOff:
                povm.weights[n] = 1.0 - std::pow(miss, n);
                break;
        }
    }
    return povm;
}

BeamSplitterKernel::BeamSplitterKernel(double t, FockCutoff cutoff)
    : n_max_(cutoff.n_max),
      amps_(static_cast<std::size_t>(cutoff.n_max + 1) * (cutoff.n_max + 1), 0.0) {
    check_transmissivity(t);
    check_cutoff(cutoff);
    for (int n = 0; n <= n_max_; ++n)
        for (int k = 0; k <= n; ++k)
            amps_[n * (n_max_ + 1) + k] =
                std::sqrt(binomial(n, k) * std::pow(t, n - k) * std::pow(1.0 - t, k));
}

FockResource as_resource(const TwoModeState& state) {
    FockResource res;
    res.n_max = state.n_max();
    res.truncated_mass = state.truncated_mass;
    FockComponent comp;
    double norm2 = 0.0;
    for (int m = 0; m <= state.n_max(); ++m)
        for (int n = 0; n <= state.n_max(); ++n)
            if (state(m, n) != 0.0) {
                comp.entries.push_back({m, n, state(m, n)});
                norm2 += state(m, n) * state(m, n);
            }
    if (norm2 <= 0.0) throw ParameterError("as_resource: zero state");
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& e : comp.entries) e.amp *= scale;
    comp.weight = 1.0;
    res.herald_prob = 1.0;
    res.components.push_back(std::move(comp));
    return res;
}

FockResource subtract_photons(const TwoModeState& state, double t, const DetectorPovm& povm1,
                              const DetectorPovm& povm2, std::optional<TruncationPolicy> policy) {
    const int n_max = state.n_max();
    if (static_cast<int>(povm1.weights.size()) <= n_max ||
        static_cast<int>(povm2.weights.size()) <= n_max)
        throw ParameterError("subtract_photons: POVM shorter than the state cutoff");
    const BeamSplitterKernel bs(t, FockCutoff{n_max});

    // Component (k1, k2) holds amplitude c_{m,n} b^{(m)}_{k1} b^{(n)}_{k2} at
    // (m - k1, n - k2).
    const int dim = n_max + 1;
    std::vector<FockComponent> grid(static_cast<std::size_t>(dim) * dim);
    for (int k1 = 0; k1 <= n_max; ++k1)
        for (int k2 = 0; k2 <= n_max; ++k2) {
            grid[k1 * dim + k2].k1 = k1;
            grid[k1 * dim + k2].k2 = k2;
        }
    for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= n_max; ++n) {
            const double c = state(m, n);
            if (c == 0.0) continue;
            for (int k1 = 0; k1 <= m; ++k1) {
                if (povm1.weights[k1] == 0.0) continue;
                const double a1 = c * bs(m, k1);
                for (int k2 = 0; k2 <= n; ++k2) {
                    if (povm2.weights[k2] == 0.0) continue;
                    const double a = a1 * bs(n, k2);
                    if (a != 0.0) grid[k1 * dim + k2].entries.push_back({m - k1, n - k2, a});
                }
            }
        }

    FockResource res;
    res.n_max = n_max;
    res.truncated_mass = state.truncated_mass;
    for (auto& comp : grid) {
        if (comp.entries.empty()) continue;
        double norm2 = 0.0;
        for (const auto& e : comp.entries) norm2 += e.amp * e.amp;
        comp.weight = povm1.weights[comp.k1] * povm2.weights[comp.k2] * norm2;
        if (comp.weight <= 0.0) continue;
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto& e : comp.entries) e.amp *= scale;
        res.herald_prob += comp.weight;
        res.components.push_back(std::move(comp));
    }
    if (res.herald_prob <= 0.0) throw ParameterError("subtract_photons: heralding probability is zero");
    for (auto& comp : res.components) comp.weight /= res.herald_prob;

    if (policy) {
        if (res.truncated_mass > policy->abs_tol || res.truncated_mass > policy->rel_tol * res.herald_prob)
            throw TruncationError("truncation overflow at n_max = " + std::to_string(n_max) +
                                  ": discarded mass " + std::to_string(res.truncated_mass) +
                                  " vs herald probability " + std::to_string(res.herald_prob));
    }
    return res;
}

TwoModeState annihilate_both(const TwoModeState& state) {
    TwoModeState out(FockCutoff{state.n_max()});
    for (int m = 0; m < state.n_max(); ++m)
        for (int n = 0; n < state.n_max(); ++n)
            out(m, n) = std::sqrt((m + 1.0) * (n + 1.0)) * state(m + 1, n + 1);
    out.truncated_mass = state.truncated_mass;
    return out;
}

double mean_photon(const FockResource& resource) {
    double total = 0.0;
    for (const auto& comp : resource.components) {
        double s = 0.0;
        for (const auto& e : comp.entries) s += (e.m + e.n) * e.amp * e.amp;
        total += comp.weight * s;
    }
    return total;
}

FidelityResult teleport_fidelity(const FockResource& resource, const FidelityQuadrature& rule) {
    if (rule.radial_nodes < 1 || rule.angular_nodes < 1)
        throw QuadratureError("teleport_fidelity: empty quadrature rule");
    const auto radial = quadrature::gauss_laguerre_scaled(rule.radial_nodes);
    const auto angular = quadrature::gauss_legendre(rule.angular_nodes, 0.0, 2.0 * std::numbers::pi);

    FidelityResult out;
    std::vector<const FockComponent*> active;
    for (const auto& comp : resource.components) {
        if (comp.weight < kPruneWeight)
            out.pruned_weight += comp.weight;
        else
            active.push_back(&comp);
    }

    std::complex<double> integral = 0.0;
    for (std::size_t j = 0; j < angular.nodes.size(); ++j) {
        const std::complex<double> phase = std::polar(1.0, angular.nodes[j]);
        for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
            const double s = radial.nodes[i];
            const std::complex<double> xi = std::sqrt(0.5 * s) * phase;
            const DisplacementMatrix d1(std::conj(xi), resource.n_max);
            const DisplacementMatrix d2(xi, resource.n_max);

            std::complex<double> chi = 0.0;
            for (const FockComponent* comp : active) {
                std::complex<double> acc = 0.0;
                for (const auto& e : comp->entries) {
                    const auto row1 = d1.row(e.m);
                    const auto row2 = d2.row(e.n);
                    std::complex<double> inner = 0.0;
                    for (const auto& f : comp->entries) inner += f.amp * row1[f.m] * row2[f.n];
                    acc += e.amp * inner;
                }
                chi += comp->weight * acc;
            }
            integral += angular.weights[j] * radial.weights[i] * std::exp(-0.5 * s) * chi;
        }
    }
    integral /= 4.0 * std::numbers::pi;
    if (!std::isfinite(integral.real()))
        throw QuadratureError("teleport_fidelity: non-finite quadrature sum");
    // Renormalize over the components actually summed.
    out.fidelity = integral.real() / (1.0 - out.pruned_weight);
    out.imag_residual = std::abs(integral.imag());
    return out;
}

CalibratedQuadrature calibrate_quadrature(double lambda, FockCutoff cutoff, double tol) {
    const FockResource anchor = as_resource(tmsv_coeffs(lambda, cutoff));
    const double target = (lambda + 1.0) / 2.0;
    CalibratedQuadrature cal;
    cal.rule = {cutoff.n_max + 1, 2};
    for (int attempt = 0; attempt < 4; ++attempt) {
        cal.anchor_error = std::abs(teleport_fidelity(anchor, cal.rule).fidelity - target);
        if (cal.anchor_error < tol) return cal;
        cal.rule.radial_nodes *= 2;
        cal.rule.angular_nodes *= 2;
    }
    throw QuadratureError("TMSV anchor not reproduced: error " + std::to_string(cal.anchor_error) +
                          " at " + std::to_string(cal.rule.radial_nodes / 2) + " radial nodes");
}

OracleResult simulate(const ResourceParams& params, std::optional<int> n_max,
                      TruncationPolicy policy) {
    params.validate();
    FockCutoff cutoff = n_max ? FockCutoff{*n_max} : FockCutoff::for_lambda(params.lambda);
    const DetectorKind kind = params.detector;

    auto build = [&](FockCutoff c, std::optional<TruncationPolicy> p) {
        const TwoModeState state = tmsv_coeffs(params.lambda, c);
        const DetectorPovm povm = build_povm(kind, params.eta, c);
        return subtract_photons(state, params.transmissivity, povm, povm, p);
    };

    FockResource resource;
    if (n_max) {
        resource = build(cutoff, policy);
    } else {
        for (;;) {
            resource = build(cutoff, std::nullopt);
            const bool ok = resource.truncated_mass <= policy.abs_tol &&
                            resource.truncated_mass <= policy.rel_tol * resource.herald_prob;
            if (ok) break;
            if (cutoff.n_max >= kMaxCutoff) {
                build(cutoff, policy);  // throws with the diagnostic
                break;
            }
            cutoff.n_max = std::min(cutoff.n_max + 5, kMaxCutoff);
        }
    }

    const CalibratedQuadrature cal = calibrate_quadrature(params.lambda, cutoff);
    const FidelityResult fid = teleport_fidelity(resource, cal.rule);

    OracleResult out;
    out.herald_prob = resource.herald_prob;
    out.fidelity = fid.fidelity;
    out.mean_photons = mean_photon(resource);
    out.n_max = cutoff.n_max;
    out.truncated_mass = resource.truncated_mass;
    out.quadrature_error = cal.anchor_error + fid.pruned_weight + fid.imag_residual;
    out.rule = cal.rule;
    return out;
}

}  // namespace pstele::fock
