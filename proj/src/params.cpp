#include "pstele/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace pstele {

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::Spd: return "spd";
        case DetectorKind::OnOff: return "onoff";
    }
    return "unknown";
}

DetectorKind parse_detector(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "spd") return DetectorKind::Spd;
    if (lower == "onoff" || lower == "on-off" || lower == "on_off") return DetectorKind::OnOff;
    throw ParameterError("unknown detector '" + std::string(text) + "' (expected spd or onoff)");
}

void check_lambda(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0)
        throw ParameterError("lambda must satisfy 0 <= lambda < 1, got " + std::to_string(lambda));
}

void check_transmissivity(double t) {
    if (!std::isfinite(t) || t <= 0.0 || t > 1.0)
        throw ParameterError("transmissivity must satisfy 0 < T <= 1, got " + std::to_string(t));
}

void check_eta(double eta) {
    if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0)
        throw ParameterError("detector efficiency must satisfy 0 < eta <= 1, got " +
                             std::to_string(eta));
}

void ResourceParams::validate() const {
    check_lambda(lambda);
    check_transmissivity(transmissivity);
    check_eta(eta);
}

}  // namespace pstele
