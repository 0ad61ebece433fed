#include "pstele/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pstele::quadrature {

namespace {

constexpr int kNewtonSteps = 100;

// Legendre P_n(x) and P_n'(x).
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

// e^{-x/2} L_{n-1}(x) and e^{-x/2} L_n(x). The scaled values stay below one
// in magnitude on [0, inf), so nothing overflows for large n and x.
std::pair<double, double> laguerre_scaled(int n, double x) {
    double prev = 0.0;
    double cur = std::exp(-0.5 * x);
    for (int k = 0; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return {prev, cur};
}

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < kNewtonSteps; ++it) {
            auto [p, d] = legendre(n, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        dp = legendre(n, x).second;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[n - 1 - i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

Rule gauss_laguerre_scaled(int n) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre_scaled: need at least one node");

    // Golub-Welsch for starting values; Newton polishes each node.
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
    for (int i = 1; i < n; ++i) sub[i - 1] = i;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gauss_laguerre_scaled: eigenvalue solve failed");

    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[i];
        for (int it = 0; it < kNewtonSteps; ++it) {
            auto [lm1, l] = laguerre_scaled(n, x);
            // L_n'(x) = n (L_n - L_{n-1}) / x; the common e^{-x/2} cancels.
            const double d = n * (l - lm1) / x;
            const double dx = l / d;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * x) break;
        }
        // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2), so w_i e^{x_i} uses the
        // scaled polynomial squared.
        const double lnext = laguerre_scaled(n + 1, x).second;
        rule.nodes[i] = x;
        rule.weights[i] = x / ((n + 1.0) * (n + 1.0) * lnext * lnext);
    }
    return rule;
}

}  // namespace pstele::quadrature
