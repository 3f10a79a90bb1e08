// dynamics.hpp: two qubits (A isolated, B driven) and a random-phase classical
// field E.
//
// Qubit B is driven by a resonant field whose phase is one of two values with
// probability 1/2 each. Its Rabi frequency is either fixed or Gaussian
// distributed around Ω with width σ (density ∝ exp(-(Ω_g-Ω)²/(4σ²)), i.e.
// variance 2σ²). The composite A⊗B⊗E state keeps the field phase as a
// two-dimensional classical register; the Rabi-frequency register is always
// integrated out inside the channel.
//
// Basis ordering: |00>, |01>, |10>, |11> for A⊗B; E appended last with
// |φ₊> = |0>, |φ₋> = |1>.

#pragma once

#include "tricorr/densemat.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>

namespace tricorr {

/// The two equally likely field phases.
struct PhaseConvention {
    std::array<double, 2> phases{std::numbers::pi / 2.0, -std::numbers::pi / 2.0};

    static PhaseConvention pm_half_pi() { return {}; }
    static PhaseConvention zero_pi() { return PhaseConvention{{0.0, std::numbers::pi}}; }

    /// "pm-half-pi", "zero-pi", or "custom".
    std::string name() const;
    /// Inverse of name(); throws DomainError for unknown names.
    static PhaseConvention from_name(const std::string& name);

    friend bool operator==(const PhaseConvention&, const PhaseConvention&) = default;
};

struct GaussianRabi {
    double omega = 1.0;  // central Rabi frequency Ω
    double sigma = 0.0;  // width σ ≥ 0; 0 means fixed frequency

    void validate() const;
};

/// Parameters of ρ⁰(x, y, z) = y|x₊><x₊| + (1−y)|z₋><z₋| with
/// |χ±> = χ|2±> + √(1−χ²)|1±>.
struct InitialStateParams {
    double x = 1.0;
    double y = 0.9;
    double z = 1.0;

    void validate() const;
};

/// Uniform grid over Ωt ∈ [0, t_max].
struct TimeGrid {
    double t_max = 30.0;
    std::size_t samples = 2000;

    double omega_t(std::size_t i) const;
    double spacing() const;
};

/// Named numerical tolerances with their defaults.
namespace tolerance {
inline constexpr const char* kDark = "dark";      // ν threshold for a dark period
inline constexpr const char* kFreeze = "freeze";  // |τ − μ₂(0)| threshold
inline constexpr const char* kRefine = "refine";  // event endpoint refinement (Ωt)
inline constexpr const char* kFluxStep = "flux_step";  // central-difference step (Ωt)

std::map<std::string, double> defaults();
}  // namespace tolerance

struct SimConfig {
    InitialStateParams initial;
    GaussianRabi rabi;
    PhaseConvention phase;
    std::size_t quadrature_order = 64;
    TimeGrid grid;
    std::map<std::string, double> tolerances = tolerance::defaults();

    /// Throws DomainError naming the offending field.
    void validate() const;
    double tol(const std::string& name) const;
};

/// 2×2 propagator of the driven qubit, with θ = Ωt/2:
///   [[cos θ, e^{-iφ} sin θ], [-e^{iφ} sin θ, cos θ]].
ComplexMatrix qubit_unitary(double phase, double omega, double t);

SubsystemLayout two_qubit_layout();
SubsystemLayout tripartite_layout();

DensityMatrix initial_two_qubit_state(const InitialStateParams& p);

/// (1/2) Σ_φ (1⊗U_φ) ρ₀ (1⊗U_φ)† at a fixed Rabi frequency.
DensityMatrix evolve_two_qubit_fixed_omega(const DensityMatrix& rho0, double omega_g,
                                           const PhaseConvention& phase, double t);

/// Gaussian average of the fixed-frequency map by `order`-point Gauss–Hermite
/// quadrature (Ω_g = Ω + 2σs). Falls back to the fixed map when σ = 0.
DensityMatrix evolve_two_qubit_gaussian(const DensityMatrix& rho0, const GaussianRabi& rabi,
                                        const PhaseConvention& phase, double t,
                                        std::size_t order);

/// Single-phase branch (1⊗U_φ) ρ₀ (1⊗U_φ)†, Gaussian-averaged when σ > 0.
/// Returned as a raw matrix; the caller owns the layout.
ComplexMatrix evolve_single_phase(const ComplexMatrix& rho0, double phase,
                                  const GaussianRabi& rabi, double t, std::size_t order);

/// Equal mixture of the two orthonormal phase states: I₂/2 on label E.
DensityMatrix build_environment_state(const PhaseConvention& phase);

/// ρ_ABE(t) = (1/2) Σ_k ρ_AB^{(φ_k)}(t) ⊗ |k><k|, block diagonal in E.
DensityMatrix build_tripartite_state(const DensityMatrix& rho0, const SimConfig& cfg, double t);

enum class TrigMoment { Cos, Sin, CosSq, SinSq, SinCos };

/// Exact Gaussian average of a trigonometric function of the Rabi angle.
/// Cos/Sin act on Ω_g t; CosSq/SinSq/SinCos act on Ω_g t / 2.
double damped_trig_moment(TrigMoment kind, double omega, double sigma, double t);

}  // namespace tricorr
