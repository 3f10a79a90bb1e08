// quadrature.hpp: Gauss–Hermite rules for averages over a Gaussian Rabi
// frequency distribution.

#pragma once

#include <cstddef>
#include <vector>

namespace tricorr {

/// Nodes and weights for ∫ exp(-s²) f(s) ds ≈ Σ w_k f(s_k).
/// Nodes ascending; weights sum to √π.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t order() const noexcept { return nodes.size(); }
};

/// Computes the n-point rule (n ≥ 1). Golub–Welsch seeds, Newton-polished on
/// the orthonormal Hermite recurrence.
GaussHermiteRule make_gauss_hermite(std::size_t n);

/// Process-wide cache of computed rules; thread-safe.
const GaussHermiteRule& gauss_hermite(std::size_t n);

}  // namespace tricorr
