#include "tricorr/quadrature.hpp"

#include "tricorr/densemat.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace tricorr {

namespace {

// Orthonormal Hermite polynomials p_k (weight exp(-s²)):
//   p_0 = π^{-1/4},  p_{k+1} = s √(2/(k+1)) p_k − √(k/(k+1)) p_{k-1}.
// Returns p_n(s) and p_{n-1}(s).
std::pair<double, double> orthonormal_hermite(std::size_t n, double s) {
    double prev = 0.0;
    double cur = 1.0 / std::pow(std::numbers::pi, 0.25);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double next = s * std::sqrt(2.0 / (kk + 1.0)) * cur - std::sqrt(kk / (kk + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

}  // namespace

GaussHermiteRule make_gauss_hermite(std::size_t n) {
    if (n == 0) throw DomainError("make_gauss_hermite: order must be positive");

    // Jacobi matrix of the recurrence; its eigenvalues are the nodes.
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(std::max<Eigen::Index>(dim - 1, 0));
    for (Eigen::Index k = 1; k < dim; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k) / 2.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw DomainError("make_gauss_hermite: tridiagonal eigensolver failed");
    }

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double s = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        // p_n' = √(2n) p_{n-1}
        for (int it = 0; it < 8; ++it) {
            const auto [pn, pn1] = orthonormal_hermite(n, s);
            const double dp = std::sqrt(2.0 * nn) * pn1;
            const double step = pn / dp;
            s -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(s))) break;
        }
        const auto [pn, pn1] = orthonormal_hermite(n, s);
        (void)pn;
        rule.nodes[k] = s;
        // Christoffel weight for orthonormal polynomials: 1 / (n p_{n-1}(s)²).
        rule.weights[k] = 1.0 / (nn * pn1 * pn1);
    }
    // Symmetrize: the exact rule is even.
    for (std::size_t k = 0; k < n / 2; ++k) {
        const std::size_t m = n - 1 - k;
        const double node = 0.5 * (rule.nodes[m] - rule.nodes[k]);
        const double weight = 0.5 * (rule.weights[m] + rule.weights[k]);
        rule.nodes[k] = -node;
        rule.nodes[m] = node;
        rule.weights[k] = rule.weights[m] = weight;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const GaussHermiteRule& gauss_hermite(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussHermiteRule>(make_gauss_hermite(n));
    return *slot;
}

}  // namespace tricorr
