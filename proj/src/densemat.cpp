#include "tricorr/densemat.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace tricorr {

SubsystemLayout::SubsystemLayout(std::initializer_list<Subsystem> parts) : parts_(parts) {
    validate();
}

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
    validate();
}

void SubsystemLayout::validate() {
    if (parts_.empty()) {
        throw DomainError("SubsystemLayout: at least one subsystem required");
    }
    std::unordered_set<std::string> seen;
    total_dim_ = 1;
    for (const auto& p : parts_) {
        if (p.label.empty()) throw DomainError("SubsystemLayout: empty label");
        if (p.dim < 2) {
            throw DomainError("SubsystemLayout: subsystem '" + p.label + "' has dimension < 2");
        }
        if (!seen.insert(p.label).second) {
            throw DomainError("SubsystemLayout: duplicate label '" + p.label + "'");
        }
        total_dim_ *= p.dim;
    }
    if (total_dim_ > kMaxDimension) {
        throw DomainError("SubsystemLayout: total dimension " + std::to_string(total_dim_) +
                          " exceeds " + std::to_string(kMaxDimension));
    }
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].label == label) return i;
    }
    throw DomainError("unknown subsystem label '" + label + "' in layout " + describe());
}

bool SubsystemLayout::contains(const std::string& label) const noexcept {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const Subsystem& p) { return p.label == label; });
}

SubsystemLayout SubsystemLayout::restricted_to(const std::vector<std::string>& keep) const {
    std::vector<bool> kept(parts_.size(), false);
    for (const auto& label : keep) kept[index_of(label)] = true;
    std::vector<Subsystem> out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (kept[i]) out.push_back(parts_[i]);
    }
    return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
    std::vector<Subsystem> out = parts_;
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return SubsystemLayout(std::move(out));
}

std::string SubsystemLayout::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << "⊗";
        os << parts_[i].label << "(" << parts_[i].dim << ")";
    }
    return os.str();
}

bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t i = 0; i < a.parts_.size(); ++i) {
        if (a.parts_[i].label != b.parts_[i].label || a.parts_[i].dim != b.parts_[i].dim) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout, TrustedTag)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {}

DensityMatrix DensityMatrix::trusted(ComplexMatrix matrix, SubsystemLayout layout) {
    if (static_cast<std::size_t>(matrix.rows()) != layout.total_dim() ||
        matrix.rows() != matrix.cols()) {
        throw DomainError("DensityMatrix: matrix shape does not match layout " +
                          layout.describe());
    }
    return DensityMatrix(std::move(matrix), std::move(layout), TrustedTag{});
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout, double tolerance)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (matrix_.rows() != matrix_.cols() ||
        static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim()) {
        throw DomainError("DensityMatrix: matrix shape does not match layout " +
                          layout_.describe());
    }
    const double tr_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    if (tr_err > tolerance) {
        throw DomainError("DensityMatrix: trace differs from 1 by " + std::to_string(tr_err));
    }
    const double herm = hermiticity_residual(matrix_);
    if (herm > tolerance) {
        throw DomainError("DensityMatrix: Hermiticity residual " + std::to_string(herm));
    }
    const auto ev = hermitian_eigenvalues(matrix_);
    if (ev.back() < -tolerance) {
        throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(ev.back()));
    }
}

// ---------------------------------------------------------------------------

ComplexMatrix matrix_from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    if (n_rows == 0) throw DomainError("matrix_from_rows: no rows");
    const auto n_cols = static_cast<Eigen::Index>(rows.begin()->size());
    if (n_cols == 0) throw DomainError("matrix_from_rows: empty row");
    ComplexMatrix m(n_rows, n_cols);
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != n_cols) {
            throw DomainError("matrix_from_rows: ragged rows");
        }
        Eigen::Index c = 0;
        for (const auto& v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
    const auto& layout = rho.layout();
    const auto& parts = layout.parts();
    const std::size_t n = parts.size();

    std::vector<bool> kept(n, false);
    for (const auto& label : keep) kept[layout.index_of(label)] = true;
    SubsystemLayout reduced_layout = layout.restricted_to(keep);

    const std::size_t full = layout.total_dim();
    // Split every full index into (kept index, traced index).
    std::vector<std::size_t> kept_idx(full), traced_idx(full);
    for (std::size_t i = 0; i < full; ++i) {
        std::size_t rem = i, k = 0, t = 0, k_scale = 1, t_scale = 1;
        for (std::size_t p = n; p-- > 0;) {
            const std::size_t digit = rem % parts[p].dim;
            rem /= parts[p].dim;
            if (kept[p]) {
                k += digit * k_scale;
                k_scale *= parts[p].dim;
            } else {
                t += digit * t_scale;
                t_scale *= parts[p].dim;
            }
        }
        kept_idx[i] = k;
        traced_idx[i] = t;
    }

    const auto red = static_cast<Eigen::Index>(reduced_layout.total_dim());
    ComplexMatrix out = ComplexMatrix::Zero(red, red);
    const auto& m = rho.matrix();
    for (std::size_t i = 0; i < full; ++i) {
        for (std::size_t j = 0; j < full; ++j) {
            if (traced_idx[i] != traced_idx[j]) continue;
            out(static_cast<Eigen::Index>(kept_idx[i]), static_cast<Eigen::Index>(kept_idx[j])) +=
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityMatrix::trusted(std::move(out), std::move(reduced_layout));
}

double hermiticity_residual(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw DomainError("hermitian_eigensystem: matrix must be square and non-empty");
    }
    const double herm = hermiticity_residual(m);
    if (herm > kStateTolerance) {
        throw DomainError("hermitian_eigensystem: input is not Hermitian (residual " +
                          std::to_string(herm) + ")");
    }
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw DomainError("hermitian_eigensystem: eigensolver did not converge");
    }
    const auto& vals = solver.eigenvalues();
    std::vector<std::size_t> order(static_cast<std::size_t>(vals.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return vals(static_cast<Eigen::Index>(a)) > vals(static_cast<Eigen::Index>(b));
    });

    HermitianEigensystem out;
    out.values.reserve(order.size());
    out.vectors.resize(h.rows(), h.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto src = static_cast<Eigen::Index>(order[k]);
        out.values.push_back(vals(src));
        out.vectors.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(src);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigensystem(m).values;
}

std::vector<double> clamped_spectrum(const DensityMatrix& rho) {
    auto ev = hermitian_eigenvalues(rho.matrix());
    for (auto& v : ev) {
        if (v < -kStateTolerance) {
            throw DomainError("negative eigenvalue " + std::to_string(v) +
                              " exceeds round-off tolerance");
        }
        if (v < 0.0) v = 0.0;
    }
    return ev;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DomainError("trace_distance: dimension mismatch (" + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()) + ")");
    }
    const auto ev = hermitian_eigenvalues(a.matrix() - b.matrix());
    double sum = 0.0;
    for (double v : ev) sum += std::abs(v);
    return 0.5 * sum;
}

namespace pauli {

ComplexMatrix identity(std::size_t n) {
    const auto d = static_cast<Eigen::Index>(n);
    return ComplexMatrix::Identity(d, d);
}

ComplexMatrix x() { return matrix_from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

ComplexMatrix y() {
    return matrix_from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}

ComplexMatrix z() { return matrix_from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace pauli

}  // namespace tricorr
