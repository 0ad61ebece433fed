#include "pstele/closed_form.hpp"

#include <cmath>
#include <string>

namespace pstele::closed_form {

namespace {

void check(double lambda, double t) {
    check_lambda(lambda);
    check_transmissivity(t);
}

void check(double lambda, double t, double eta) {
    check(lambda, t);
    check_eta(eta);
}

void check_photon_args(double lambda, double t) {
    check_lambda(lambda);
    if (!std::isfinite(t) || t < 0.0 || t > 1.0)
        throw ParameterError("transmissivity must satisfy 0 <= T <= 1, got " + std::to_string(t));
}

}  // namespace

double fidelity_tmsv(double lambda) {
    check_lambda(lambda);
    return (lambda + 1.0) / 2.0;
}

double fidelity_spd(double lambda, double t) {
    check(lambda, t);
    const double lt = lambda * t;
    return std::pow(lt + 1.0, 3) * (2.0 - lt * (2.0 - lt)) / (4.0 * (lt * lt + 1.0));
}

double success_spd(double lambda, double t) {
    check(lambda, t);
    const double l2 = lambda * lambda;
    const double lt2 = l2 * t * t;
    const double tap = 1.0 - t;
    return l2 * (1.0 - l2) * tap * tap * (lt2 + 1.0) / std::pow(1.0 - lt2, 3);
}

double fidelity_onoff(double lambda, double t) {
    check(lambda, t);
    const double l = lambda;
    const double l2 = l * l;
    const double num = (l + 1.0) * (l * t + 1.0) * (2.0 - (2.0 - l) * l * t) * (1.0 - l2 * t);
    const double den = 2.0 * (l * (1.0 - t) + 1.0) * (l2 * t + 1.0) *
                       (2.0 - l * t * (l * (1.0 - t) + 2.0));
    return num / den;
}

double success_onoff(double lambda, double t) {
    check(lambda, t);
    const double l2 = lambda * lambda;
    const double tap = 1.0 - t;
    return l2 * tap * tap * (l2 * t + 1.0) / ((1.0 - l2 * t) * (1.0 - l2 * t * t));
}

double fidelity_spd_lossy(double lambda, double t, double eta) {
    check(lambda, t, eta);
    const double l = lambda;
    const double l2 = l * l;
    const double tap = 1.0 - t;
    const double heralded = l - eta * l * tap;  // lambda * T_eff
    const double quad = l2 * (2.0 * eta * eta * tap * tap - 2.0 * eta * (2.0 - t) * tap -
                              (2.0 - t) * t + 2.0) -
                        2.0 * l * t + 2.0;
    const double num = std::pow(heralded + 1.0, 3) * quad;
    const double den = 4.0 * std::pow((1.0 - eta) * l * tap + 1.0, 3) * (heralded * heralded + 1.0);
    return num / den;
}

double fidelity_onoff_lossy(double lambda, double t, double eta) {
    check(lambda, t, eta);
    const double l = lambda;
    const double l2 = l * l;
    const double tap = 1.0 - t;
    const double t_eff = 1.0 - eta * tap;
    const double num = (l + 1.0) * (1.0 + l - tap * eta * l) * (1.0 - t_eff * l2) *
                       (2.0 - l * (-2.0 * l - l * (2.0 - t) * ((1.0 - eta) * (-t) - eta) + 2.0 * t));
    const double den = 2.0 * (l * tap + 1.0) * ((1.0 - eta) * l * tap + 1.0) *
                       (2.0 - l2 * tap * (2.0 - eta * (2.0 - t)) - 2.0 * l * t) *
                       (l2 * t_eff + 1.0);
    return num / den;
}

double effective_transmissivity(double t, double eta) {
    check_transmissivity(t);
    check_eta(eta);
    return 1.0 - eta * (1.0 - t);
}

double fidelity_onoff_teff_substituted(double lambda, double t, double eta) {
    return fidelity_onoff(lambda, effective_transmissivity(t, eta));
}

double fidelity_unit_transmission(double lambda) {
    check_lambda(lambda);
    const double l = lambda;
    return std::pow(l + 1.0, 3) * (2.0 - (2.0 - l) * l) / (4.0 * (l * l + 1.0));
}

double fidelity(DetectorKind detector, double lambda, double t, double eta) {
    switch (detector) {
        case DetectorKind::Spd: return fidelity_spd_lossy(lambda, t, eta);
        case DetectorKind::OnOff: return fidelity_onoff_lossy(lambda, t, eta);
    }
    throw ParameterError("unknown detector kind");
}

double success_probability(DetectorKind detector, double lambda, double t, double eta) {
    const double t_eff = effective_transmissivity(t, eta);
    switch (detector) {
        case DetectorKind::Spd: return success_spd(lambda, t_eff);
        case DetectorKind::OnOff: return success_onoff(lambda, t_eff);
    }
    throw ParameterError("unknown detector kind");
}

double delta_fidelity(DetectorKind detector, double lambda, double t, double eta) {
    return fidelity(detector, lambda, t, eta) - fidelity_tmsv(lambda);
}

double merit(DetectorKind detector, double lambda, double t, double eta) {
    return success_probability(detector, lambda, t, eta) * delta_fidelity(detector, lambda, t, eta);
}

Metrics evaluate(const ResourceParams& params) {
    params.validate();
    Metrics m;
    m.fidelity = fidelity(params.detector, params.lambda, params.transmissivity, params.eta);
    m.success_prob =
        success_probability(params.detector, params.lambda, params.transmissivity, params.eta);
    m.delta_f = m.fidelity - fidelity_tmsv(params.lambda);
    m.merit = m.success_prob * m.delta_f;
    return m;
}

double mean_photons_tmsv(double lambda) {
    check_lambda(lambda);
    const double l2 = lambda * lambda;
    return 2.0 * l2 / (1.0 - l2);
}

double mean_photons_spd(double lambda, double t) {
    check_photon_args(lambda, t);
    const double x = lambda * lambda * t * t;
    return 4.0 * x * (x + 2.0) / (1.0 - x * x);
}

double delta_mean_photons_spd(double lambda, double t) {
    return mean_photons_spd(lambda, t) - mean_photons_tmsv(lambda);
}

}  // namespace pstele::closed_form
