#pragma once

#include <vector>

namespace pstele::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Gauss-Laguerre rule for weight e^{-x} on [0, inf).
///
/// The returned weights are the exponentially scaled weights w_i e^{x_i},
/// so sum_i weights[i] * f(nodes[i]) approximates the unweighted integral of
/// f over [0, inf). Exact for f(x) = e^{-x} p(x) with deg p <= 2n - 1.
/// Scaled weights are computed from the node values directly rather than
/// from eigenvectors: large nodes carry tiny weights whose absolute accuracy
/// would be useless once multiplied by e^{x}.
Rule gauss_laguerre_scaled(int n);

}  // namespace pstele::quadrature
