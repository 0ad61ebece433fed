#pragma once

// Closed-form figures of merit for photon-subtracted TMSV teleportation
// resources. Fidelities are for a coherent input under the unit-gain
// Vaidman-Braunstein-Kimble protocol with overlap fidelity <a|rho_tel|a>.
//
// Every function validates its arguments and throws ParameterError outside
// the domain documented in ResourceParams.

#include "pstele/params.hpp"

namespace pstele::closed_form {

/// Bare TMSV resource: (lambda + 1) / 2.
double fidelity_tmsv(double lambda);

/// Ideal single-photon detectors on both modes.
double fidelity_spd(double lambda, double t);
double success_spd(double lambda, double t);

/// Ideal on-off detectors on both modes.
double fidelity_onoff(double lambda, double t);
double success_onoff(double lambda, double t);

/// Detectors of efficiency eta. Both reduce to the ideal forms at eta = 1.
double fidelity_spd_lossy(double lambda, double t, double eta);
double fidelity_onoff_lossy(double lambda, double t, double eta);

/// 1 - eta (1 - T): folds the detector loss into the tap beam splitter.
double effective_transmissivity(double t, double eta);

/// Ideal on-off fidelity evaluated at the effective transmissivity. This is
/// the substitution that is valid for success probabilities only; kept for
/// comparison against fidelity_onoff_lossy.
double fidelity_onoff_teff_substituted(double lambda, double t, double eta);

/// Common T -> 1 limit of both ideal fidelities.
double fidelity_unit_transmission(double lambda);

// Detector-dispatching forms. Detector loss enters the success probability
// through effective_transmissivity and the fidelity through the lossy forms.
double fidelity(DetectorKind detector, double lambda, double t, double eta);
double success_probability(DetectorKind detector, double lambda, double t, double eta);
double delta_fidelity(DetectorKind detector, double lambda, double t, double eta);
double merit(DetectorKind detector, double lambda, double t, double eta);

Metrics evaluate(const ResourceParams& params);

// Mean total photon number <a1^dag a1 + a2^dag a2>. These accept T in [0, 1].
double mean_photons_tmsv(double lambda);
double mean_photons_spd(double lambda, double t);
double delta_mean_photons_spd(double lambda, double t);

}  // namespace pstele::closed_form
