#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstele {

/// Detector used on the tapped port of each photon-subtraction beam splitter.
enum class DetectorKind { Spd, OnOff };

std::string_view to_string(DetectorKind kind);

/// Accepts "spd" or "onoff" (case-insensitive, "on-off" also accepted).
DetectorKind parse_detector(std::string_view text);

/// Raised for any input outside the physical parameter domain.
class ParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A point in parameter space.
///
/// lambda is tanh(r) of the two-mode squeezer, transmissivity is the
/// subtraction beam splitter T and eta the detector efficiency.
/// Domain: 0 <= lambda < 1, 0 < T <= 1, 0 < eta <= 1.
struct ResourceParams {
    double lambda = 0.0;
    double transmissivity = 1.0;
    double eta = 1.0;
    DetectorKind detector = DetectorKind::Spd;

    /// Throws ParameterError if any field is outside the domain.
    void validate() const;
};

void check_lambda(double lambda);
void check_transmissivity(double t);
void check_eta(double eta);

/// Evaluation results at one parameter point. merit == success_prob * delta_f.
struct Metrics {
    double fidelity = 0.0;
    double success_prob = 0.0;
    double delta_f = 0.0;
    double merit = 0.0;
};

}  // namespace pstele
