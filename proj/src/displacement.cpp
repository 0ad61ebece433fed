#include "pstele/displacement.hpp"

#include <cmath>
#include <stdexcept>

namespace pstele::fock {

DisplacementMatrix::DisplacementMatrix(std::complex<double> alpha, int n_max)
    : n_max_(n_max), dim_(n_max + 1), data_(static_cast<std::size_t>(dim_) * dim_) {
    if (n_max < 0) throw std::invalid_argument("DisplacementMatrix: negative cutoff");

    const double u = std::norm(alpha);
    const std::complex<double> lower_step = alpha;               // m > n
    const std::complex<double> upper_step = -std::conj(alpha);   // m < n

    // edge[d] = <d|D|0> for the lower triangle; <0|D|d> for the upper one.
    std::complex<double> lower_edge = std::exp(-0.5 * u);
    std::complex<double> upper_edge = lower_edge;
    for (int d = 0; d <= n_max; ++d) {
        if (d > 0) {
            lower_edge *= lower_step / std::sqrt(static_cast<double>(d));
            upper_edge *= upper_step / std::sqrt(static_cast<double>(d));
        }
        // Along the diagonal, with D_j = <j+d|D|j> (or its transposed partner):
        // sqrt((j+1)(j+1+d)) D_{j+1} = (2j+1+d-u) D_j - sqrt(j(j+d)) D_{j-1}.
        auto fill = [&](std::complex<double> start, bool lower) {
            std::complex<double> prev = 0.0;
            std::complex<double> cur = start;
            for (int j = 0; j + d <= n_max; ++j) {
                const int m = lower ? j + d : j;
                const int n = lower ? j : j + d;
                data_[m * dim_ + n] = cur;
                const double jd = j;
                const std::complex<double> next =
                    ((2.0 * jd + 1.0 + d - u) * cur - std::sqrt(jd * (jd + d)) * prev) /
                    std::sqrt((jd + 1.0) * (jd + 1.0 + d));
                prev = cur;
                cur = next;
            }
        };
        fill(lower_edge, true);
        if (d > 0) fill(upper_edge, false);
    }
}

}  // namespace pstele::fock
