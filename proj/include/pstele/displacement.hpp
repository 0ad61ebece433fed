#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pstele::fock {

/// Number-basis matrix elements <m|D(alpha)|n> for 0 <= m, n <= n_max of the
/// displacement operator D(alpha) = exp(alpha a^dag - alpha^* a).
///
/// Each diagonal m - n = d is filled by the three-term recurrence of the
/// normalized associated Laguerre polynomials L_n^{(|d|)}(|alpha|^2), which is
/// run forward in n from the exact edge values and does not overflow for
/// n_max in the range used here.
class DisplacementMatrix {
public:
    DisplacementMatrix(std::complex<double> alpha, int n_max);

    int n_max() const { return n_max_; }
    std::complex<double> operator()(int m, int n) const { return data_[m * dim_ + n]; }
    std::span<const std::complex<double>> row(int m) const {
        return {data_.data() + static_cast<std::size_t>(m) * dim_, static_cast<std::size_t>(dim_)};
    }

private:
    int n_max_;
    int dim_;
    std::vector<std::complex<double>> data_;
};

}  // namespace pstele::fock
