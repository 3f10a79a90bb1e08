#include "tricorr/dynamics.hpp"

#include "tricorr/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace tricorr {

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

ComplexMatrix bell_vector(int kind) {
    // Columns: |1+>, |1->, |2+>, |2-> in the |00>,|01>,|10>,|11> basis.
    const double h = 1.0 / std::numbers::sqrt2;
    ComplexMatrix v = ComplexMatrix::Zero(4, 1);
    switch (kind) {
        case 0: v(1, 0) = h; v(2, 0) = h; break;
        case 1: v(1, 0) = h; v(2, 0) = -h; break;
        case 2: v(0, 0) = h; v(3, 0) = h; break;
        default: v(0, 0) = h; v(3, 0) = -h; break;
    }
    return v;
}

ComplexMatrix conjugate_on_b(const ComplexMatrix& rho, const ComplexMatrix& u) {
    const ComplexMatrix full = kron(pauli::identity(2), u);
    return full * rho * full.adjoint();
}

}  // namespace

std::string PhaseConvention::name() const {
    if (*this == pm_half_pi()) return "pm-half-pi";
    if (*this == zero_pi()) return "zero-pi";
    return "custom";
}

PhaseConvention PhaseConvention::from_name(const std::string& name) {
    if (name == "pm-half-pi") return pm_half_pi();
    if (name == "zero-pi") return zero_pi();
    throw DomainError("unknown phase convention '" + name + "' (expected pm-half-pi or zero-pi)");
}

void GaussianRabi::validate() const {
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw DomainError("omega must be finite and positive");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw DomainError("sigma must be finite and non-negative");
    }
}

void InitialStateParams::validate() const {
    if (!in_unit_interval(x)) throw DomainError("x must lie in [0, 1], got " + std::to_string(x));
    if (!in_unit_interval(y)) throw DomainError("y must lie in [0, 1], got " + std::to_string(y));
    if (!in_unit_interval(z)) throw DomainError("z must lie in [0, 1], got " + std::to_string(z));
}

double TimeGrid::omega_t(std::size_t i) const {
    if (i + 1 == samples) return t_max;
    return t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
}

double TimeGrid::spacing() const { return t_max / static_cast<double>(samples - 1); }

namespace tolerance {
std::map<std::string, double> defaults() {
    return {{kDark, 1e-9}, {kFreeze, 1e-6}, {kRefine, 1e-6}, {kFluxStep, 1e-3}};
}
}  // namespace tolerance

void SimConfig::validate() const {
    initial.validate();
    rabi.validate();
    for (double p : phase.phases) {
        if (!std::isfinite(p)) throw DomainError("phase_convention: phases must be finite");
    }
    if (rabi.sigma > 0.0 && quadrature_order < 2) {
        throw DomainError("quadrature_order must be >= 2 when sigma > 0");
    }
    if (!std::isfinite(grid.t_max) || grid.t_max <= 0.0) {
        throw DomainError("t_max must be finite and positive");
    }
    if (grid.samples < 2) throw DomainError("samples must be >= 2");
    for (const auto& [name, value] : tolerances) {
        if (!std::isfinite(value) || value <= 0.0) {
            throw DomainError("tolerance '" + name + "' must be finite and positive");
        }
    }
    for (const auto& [name, value] : tolerance::defaults()) {
        (void)value;
        if (!tolerances.contains(name)) throw DomainError("tolerance '" + name + "' missing");
    }
}

double SimConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw DomainError("unknown tolerance '" + name + "'");
    return it->second;
}

// ---------------------------------------------------------------------------

ComplexMatrix qubit_unitary(double phase, double omega, double t) {
    const double theta = 0.5 * omega * t;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e_minus = std::polar(1.0, -phase);
    const Complex e_plus = std::polar(1.0, phase);
    return matrix_from_rows({{c, e_minus * s}, {-e_plus * s, c}});
}

SubsystemLayout two_qubit_layout() { return SubsystemLayout{{"A", 2}, {"B", 2}}; }

SubsystemLayout tripartite_layout() { return SubsystemLayout{{"A", 2}, {"B", 2}, {"E", 2}}; }

DensityMatrix initial_two_qubit_state(const InitialStateParams& p) {
    p.validate();
    const ComplexMatrix x_plus =
        p.x * bell_vector(2) + std::sqrt(1.0 - p.x * p.x) * bell_vector(0);
    const ComplexMatrix z_minus =
        p.z * bell_vector(3) + std::sqrt(1.0 - p.z * p.z) * bell_vector(1);
    ComplexMatrix rho = p.y * (x_plus * x_plus.adjoint()) +
                        (1.0 - p.y) * (z_minus * z_minus.adjoint());
    return DensityMatrix(std::move(rho), two_qubit_layout());
}

ComplexMatrix evolve_single_phase(const ComplexMatrix& rho0, double phase,
                                  const GaussianRabi& rabi, double t, std::size_t order) {
    if (rabi.sigma == 0.0) {
        return conjugate_on_b(rho0, qubit_unitary(phase, rabi.omega, t));
    }
    const auto& rule = gauss_hermite(order);
    ComplexMatrix acc = ComplexMatrix::Zero(rho0.rows(), rho0.cols());
    for (std::size_t k = 0; k < rule.order(); ++k) {
        const double omega_g = rabi.omega + 2.0 * rabi.sigma * rule.nodes[k];
        acc += rule.weights[k] * conjugate_on_b(rho0, qubit_unitary(phase, omega_g, t));
    }
    return acc / std::sqrt(std::numbers::pi);
}

DensityMatrix evolve_two_qubit_fixed_omega(const DensityMatrix& rho0, double omega_g,
                                           const PhaseConvention& phase, double t) {
    if (rho0.dim() != 4) throw DomainError("evolve_two_qubit_fixed_omega: expected a 4x4 state");
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (double phi : phase.phases) {
        out += 0.5 * conjugate_on_b(rho0.matrix(), qubit_unitary(phi, omega_g, t));
    }
    return DensityMatrix::trusted(std::move(out), rho0.layout());
}

DensityMatrix evolve_two_qubit_gaussian(const DensityMatrix& rho0, const GaussianRabi& rabi,
                                        const PhaseConvention& phase, double t,
                                        std::size_t order) {
    rabi.validate();
    if (rabi.sigma == 0.0) return evolve_two_qubit_fixed_omega(rho0, rabi.omega, phase, t);
    if (order < 2) throw DomainError("evolve_two_qubit_gaussian: order must be >= 2");
    if (rho0.dim() != 4) throw DomainError("evolve_two_qubit_gaussian: expected a 4x4 state");
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (double phi : phase.phases) {
        out += 0.5 * evolve_single_phase(rho0.matrix(), phi, rabi, t, order);
    }
    return DensityMatrix::trusted(std::move(out), rho0.layout());
}

DensityMatrix build_environment_state(const PhaseConvention& phase) {
    (void)phase;  // the phase states are orthonormal whatever the angles
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    return DensityMatrix(std::move(m), SubsystemLayout{{"E", 2}});
}

DensityMatrix build_tripartite_state(const DensityMatrix& rho0, const SimConfig& cfg, double t) {
    if (!(rho0.layout() == two_qubit_layout())) {
        throw DomainError("build_tripartite_state: rho0 must live on A⊗B");
    }
    ComplexMatrix out = ComplexMatrix::Zero(8, 8);
    for (std::size_t k = 0; k < 2; ++k) {
        const ComplexMatrix branch =
            evolve_single_phase(rho0.matrix(), cfg.phase.phases[k], cfg.rabi, t, cfg.quadrature_order);
        ComplexMatrix flag = ComplexMatrix::Zero(2, 2);
        flag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 0.5;
        out += kron(branch, flag);
    }
    return DensityMatrix::trusted(std::move(out), tripartite_layout());
}

double damped_trig_moment(TrigMoment kind, double omega, double sigma, double t) {
    // Ω_g ~ N(Ω, 2σ²): E[exp(iΩ_g t)] = exp(iΩt) exp(-σ²t²).
    const double damping = std::exp(-sigma * sigma * t * t);
    const double c = std::cos(omega * t) * damping;
    const double s = std::sin(omega * t) * damping;
    switch (kind) {
        case TrigMoment::Cos: return c;
        case TrigMoment::Sin: return s;
        case TrigMoment::CosSq: return 0.5 * (1.0 + c);
        case TrigMoment::SinSq: return 0.5 * (1.0 - c);
        case TrigMoment::SinCos: return 0.5 * s;
    }
    return 0.0;
}

}  // namespace tricorr
