#pragma once

// Brute-force photon-number-basis model of the subtraction setup: TMSV,
// a beam splitter with vacuum ancilla on each mode, a diagonal detector POVM
// on each ancilla, and unit-gain teleportation fidelity evaluated from the
// resource characteristic function. Shares no code with closed_form.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pstele/params.hpp"

namespace pstele::fock {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest photon number kept per mode (inclusive).
struct FockCutoff {
    int n_max = 20;

    /// Norm of a TMSV lost above n_max: lambda^{2(n_max+1)}.
    static double tail_bound(double lambda, int n_max);

    /// Smallest n_max >= floor with tail_bound < tail_tol. Throws
    /// TruncationError if that exceeds cap.
    static FockCutoff for_lambda(double lambda, double tail_tol = 1e-10, int floor = 20,
                                 int cap = 80);
};

inline constexpr int kMaxCutoff = 80;

/// Dense real coefficient grid c_{mn} of a two-mode pure state.
class TwoModeState {
public:
    explicit TwoModeState(FockCutoff cutoff);

    int n_max() const { return n_max_; }
    double& operator()(int m, int n) { return coeffs_[m * (n_max_ + 1) + n]; }
    double operator()(int m, int n) const { return coeffs_[m * (n_max_ + 1) + n]; }
    double norm2() const;

    /// Upper bound on the probability mass discarded by truncation.
    double truncated_mass = 0.0;

private:
    int n_max_;
    std::vector<double> coeffs_;
};

/// c_{nn} = sqrt(1 - lambda^2) lambda^n. Throws TruncationError when
/// tail_tol is given and the discarded mass exceeds it.
TwoModeState tmsv_coeffs(double lambda, FockCutoff cutoff,
                         std::optional<double> tail_tol = std::nullopt);

/// Diagonal heralding POVM element over n = 0..n_max.
struct DetectorPovm {
    std::vector<double> weights;
};

/// Spd: n eta (1-eta)^{n-1}. OnOff: 1 - (1-eta)^n.
DetectorPovm build_povm(DetectorKind detector, double eta, FockCutoff cutoff);

/// Amplitudes for |n,0> -> |n-k,k> through a beam splitter of transmissivity T:
/// sqrt(C(n,k) T^{n-k} (1-T)^k).
class BeamSplitterKernel {
public:
    BeamSplitterKernel(double t, FockCutoff cutoff);

    int n_max() const { return n_max_; }
    double operator()(int n, int k) const { return amps_[n * (n_max_ + 1) + k]; }

private:
    int n_max_;
    std::vector<double> amps_;
};

struct FockEntry {
    int m;
    int n;
    double amp;
};

/// One pure component of the heralded ensemble; (k1, k2) are the ancilla
/// photon numbers that produced it. Entries are stored sparsely.
struct FockComponent {
    double weight = 0.0;
    int k1 = 0;
    int k2 = 0;
    std::vector<FockEntry> entries;
};

/// Normalized heralded ensemble: component weights sum to one, each
/// component has unit norm, herald_prob is the success probability.
struct FockResource {
    int n_max = 0;
    double herald_prob = 0.0;
    double truncated_mass = 0.0;
    std::vector<FockComponent> components;
};

struct TruncationPolicy {
    double abs_tol = 1e-10;  // truncated mass, absolute
    double rel_tol = 1e-8;   // truncated mass relative to herald_prob
};

/// Wraps a pure state as a one-component resource with herald_prob = 1.
FockResource as_resource(const TwoModeState& state);

/// Beam splitter + detector on both modes; components are indexed by the
/// ancilla outcome pair. Throws TruncationError if the state's truncated mass
/// violates the policy, or ParameterError if nothing is heralded.
FockResource subtract_photons(const TwoModeState& state, double t, const DetectorPovm& povm1,
                              const DetectorPovm& povm2,
                              std::optional<TruncationPolicy> policy = TruncationPolicy{});

/// a1 a2 |state>, unnormalized: c'_{mn} = sqrt((m+1)(n+1)) c_{m+1,n+1}. This is
/// the T -> 1 limit of subtracting one photon from each mode. truncated_mass
/// is copied from the input.
TwoModeState annihilate_both(const TwoModeState& state);

/// <a1^dag a1 + a2^dag a2>.
double mean_photon(const FockResource& resource);

struct FidelityQuadrature {
    int radial_nodes = 0;
    int angular_nodes = 2;
};

struct FidelityResult {
    double fidelity = 0.0;
    double pruned_weight = 0.0;  // ensemble weight skipped as negligible
    double imag_residual = 0.0;  // |Im| of the integral, should vanish
};

/// Unit-gain protocol fidelity for a coherent input:
///   F = (1/pi) \int d^2xi e^{-|xi|^2} chi_res(xi^*, xi),
/// chi_res(xi1, xi2) = Tr[rho D_1(xi1) D_2(xi2)], evaluated in polar
/// coordinates with Gauss-Laguerre nodes in s = 2|xi|^2 and Gauss-Legendre
/// nodes in the angle. Independent of the coherent amplitude.
FidelityResult teleport_fidelity(const FockResource& resource, const FidelityQuadrature& rule);

struct CalibratedQuadrature {
    FidelityQuadrature rule;
    double anchor_error = 0.0;
};

/// Starts at n_max + 1 radial and 2 angular nodes and doubles both until the
/// truncated TMSV at this lambda reproduces (lambda + 1)/2 within tol.
/// Throws QuadratureError if that fails within a few doublings.
CalibratedQuadrature calibrate_quadrature(double lambda, FockCutoff cutoff, double tol = 1e-8);

struct OracleResult {
    double herald_prob = 0.0;
    double fidelity = 0.0;
    double mean_photons = 0.0;
    int n_max = 0;
    double truncated_mass = 0.0;
    double quadrature_error = 0.0;
    FidelityQuadrature rule;
};

/// Full pipeline at one parameter point. Without n_max the cutoff is chosen
/// from FockCutoff::for_lambda and grown in steps of 5 (at most to
/// kMaxCutoff) until the policy holds.
OracleResult simulate(const ResourceParams& params, std::optional<int> n_max = std::nullopt,
                      TruncationPolicy policy = {});

}  // namespace pstele::fock
