// densemat.hpp: small dense complex matrices with subsystem-aware reduction.
//
// Everything here operates on dimensions of at most 16, so all routines are
// plain dense loops or direct Eigen calls.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tricorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Thrown when an input violates an operation's domain (bad label, non-Hermitian
/// input, negative spectrum beyond round-off, out-of-range parameter).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Largest dimension any routine in this library accepts.
inline constexpr std::size_t kMaxDimension = 16;

/// Default tolerance for the trace/Hermiticity/positivity contract.
inline constexpr double kStateTolerance = 1e-10;

struct Subsystem {
    std::string label;
    std::size_t dim = 2;
};

/// Ordered tensor-product structure. The first part is the most significant
/// index, so for (A, B, E) the basis index is a*dB*dE + b*dE + e.
class SubsystemLayout {
public:
    SubsystemLayout(std::initializer_list<Subsystem> parts);
    explicit SubsystemLayout(std::vector<Subsystem> parts);

    const std::vector<Subsystem>& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    std::size_t total_dim() const noexcept { return total_dim_; }

    /// Position of `label`; throws DomainError for unknown labels.
    std::size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const noexcept;

    /// Sub-layout of the kept labels, in this layout's order.
    SubsystemLayout restricted_to(const std::vector<std::string>& keep) const;

    /// Concatenation (this ⊗ other); labels must stay unique.
    SubsystemLayout concat(const SubsystemLayout& other) const;

    std::string describe() const;

    friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b);

private:
    void validate();

    std::vector<Subsystem> parts_;
    std::size_t total_dim_ = 1;
};

/// A state: trace one, Hermitian and positive semidefinite within the given
/// tolerance, tagged with its tensor layout. Immutable after construction.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout,
                  double tolerance = kStateTolerance);

    /// Skips the spectral check. Only for results of contract-preserving
    /// maps applied to already validated states (partial trace, channels).
    static DensityMatrix trusted(ComplexMatrix matrix, SubsystemLayout layout);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const SubsystemLayout& layout() const noexcept { return layout_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

private:
    struct TrustedTag {};
    DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout, TrustedTag);

    ComplexMatrix matrix_;
    SubsystemLayout layout_;
};

/// Builds a matrix from nested row lists.
ComplexMatrix matrix_from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Density matrix on the product layout.
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep` (labels, any order), returned in the original
/// layout order. Throws DomainError for unknown labels or an empty set.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// max |m - m^dagger| over entries.
double hermiticity_residual(const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Real spectrum of a Hermitian matrix, sorted descending (ties keep the
/// solver's original index order). Throws DomainError when `m` is not
/// Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct HermitianEigensystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Spectrum with round-off clamping: values in [-1e-10, 0) become 0, anything
/// more negative throws DomainError.
std::vector<double> clamped_spectrum(const DensityMatrix& rho);

/// (1/2) * sum of |eigenvalues| of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

namespace pauli {
ComplexMatrix identity(std::size_t n);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace tricorr
