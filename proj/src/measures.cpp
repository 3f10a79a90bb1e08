#include "tricorr/measures.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace tricorr {

namespace {

const SubsystemLayout& abe_layout() {
    static const SubsystemLayout layout{{"A", 2}, {"B", 2}, {"E", 2}};
    return layout;
}

// Index of the extremum; earlier entries win ties within kBranchTieTolerance.
std::size_t arg_extremum(const std::array<double, 3>& v, bool want_max) {
    const double best = want_max ? *std::max_element(v.begin(), v.end())
                                 : *std::min_element(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - best) <= kBranchTieTolerance) return i;
    }
    return 0;
}

}  // namespace

BipartitionCut::BipartitionCut(const SubsystemLayout& layout, std::vector<std::string> group)
    : group_(std::move(group)) {
    if (group_.empty()) throw DomainError("BipartitionCut: group is empty");
    for (const auto& label : group_) {
        if (!layout.contains(label)) {
            throw DomainError("BipartitionCut: unknown label '" + label + "'");
        }
    }
    for (const auto& part : layout.parts()) {
        if (std::find(group_.begin(), group_.end(), part.label) == group_.end()) {
            complement_.push_back(part.label);
        }
    }
    if (complement_.empty()) throw DomainError("BipartitionCut: group must be a proper subset");
}

std::string_view to_string(Cut cut) {
    switch (cut) {
        case Cut::AB_E: return "AB|E";
        case Cut::AE_B: return "AE|B";
        case Cut::BE_A: return "BE|A";
    }
    return "?";
}

std::string_view to_string(Pair pair) {
    switch (pair) {
        case Pair::AB: return "AB";
        case Pair::AE: return "AE";
        case Pair::BE: return "BE";
    }
    return "?";
}

Pair complement_pair(Cut cut) {
    switch (cut) {
        case Cut::AB_E: return Pair::AB;
        case Cut::AE_B: return Pair::AE;
        case Cut::BE_A: return Pair::BE;
    }
    return Pair::AB;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double v : clamped_spectrum(rho)) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return s;
}

double mutual_information(const DensityMatrix& rho, const BipartitionCut& cut) {
    for (const auto& label : cut.group()) rho.layout().index_of(label);
    if (cut.group().size() + cut.complement().size() != rho.layout().size()) {
        throw DomainError("mutual_information: cut does not match the state's layout");
    }
    return von_neumann_entropy(partial_trace(rho, cut.group())) +
           von_neumann_entropy(partial_trace(rho, cut.complement())) - von_neumann_entropy(rho);
}

double pair_mutual_information(const DensityMatrix& rho,
                               const std::pair<std::string, std::string>& pair) {
    if (pair.first == pair.second) {
        throw DomainError("pair_mutual_information: labels must differ");
    }
    const auto reduced = partial_trace(rho, {pair.first, pair.second});
    return mutual_information(reduced, BipartitionCut(reduced.layout(), {pair.first}));
}

double concurrence(const DensityMatrix& rho_ab) {
    if (rho_ab.dim() != 4) throw DomainError("concurrence: expected a 4x4 two-qubit state");
    // ρ = W W† with W = V √Λ; the Wootters λ_i are the singular values of
    // Wᵀ (σy⊗σy) W, i.e. √eig(ρ ρ̃) without square-rooting round-off noise.
    const auto eig = hermitian_eigensystem(rho_ab.matrix());
    ComplexMatrix w = eig.vectors;
    for (Eigen::Index k = 0; k < 4; ++k) {
        double v = eig.values[static_cast<std::size_t>(k)];
        if (v < -kStateTolerance) {
            throw DomainError("concurrence: negative eigenvalue " + std::to_string(v));
        }
        w.col(k) *= std::sqrt(std::max(v, 0.0));
    }
    const ComplexMatrix yy = kron(pauli::y(), pauli::y());
    const ComplexMatrix m = w.transpose() * yy * w;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();  // descending
    const double c = sv(0) - sv(1) - sv(2) - sv(3);
    return std::clamp(c, 0.0, 1.0);
}

double state_information(const DensityMatrix& rho) {
    return std::log(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

double local_information(const DensityMatrix& rho) {
    double total = 0.0;
    for (const auto& part : rho.layout().parts()) {
        total += state_information(partial_trace(rho, {part.label}));
    }
    return total;
}

// ---------------------------------------------------------------------------

double TripartiteEntropies::cut(Cut c) const {
    switch (c) {
        case Cut::AB_E: return ab + e - abe;
        case Cut::AE_B: return ae + b - abe;
        case Cut::BE_A: return be + a - abe;
    }
    return 0.0;
}

double TripartiteEntropies::pair(Pair p) const {
    switch (p) {
        case Pair::AB: return a + b - ab;
        case Pair::AE: return a + e - ae;
        case Pair::BE: return b + e - be;
    }
    return 0.0;
}

TripartiteEntropies tripartite_entropies(const DensityMatrix& rho) {
    if (!(rho.layout() == abe_layout())) {
        throw DomainError("expected a tripartite state on A(2)⊗B(2)⊗E(2), got " +
                          rho.layout().describe());
    }
    TripartiteEntropies s;
    s.a = von_neumann_entropy(partial_trace(rho, {"A"}));
    s.b = von_neumann_entropy(partial_trace(rho, {"B"}));
    s.e = von_neumann_entropy(partial_trace(rho, {"E"}));
    s.ab = von_neumann_entropy(partial_trace(rho, {"A", "B"}));
    s.ae = von_neumann_entropy(partial_trace(rho, {"A", "E"}));
    s.be = von_neumann_entropy(partial_trace(rho, {"B", "E"}));
    s.abe = von_neumann_entropy(rho);
    return s;
}

TauResult genuine_tripartite_tau(const TripartiteEntropies& s) {
    TauResult r;
    r.cut_values = {s.cut(Cut::AB_E), s.cut(Cut::AE_B), s.cut(Cut::BE_A)};
    const auto i = arg_extremum(r.cut_values, false);
    r.branch = static_cast<Cut>(i);
    r.value = r.cut_values[i];
    return r;
}

TauResult genuine_tripartite_tau(const DensityMatrix& rho_tri) {
    return genuine_tripartite_tau(tripartite_entropies(rho_tri));
}

Mu2Result max_pair_information(const TripartiteEntropies& s) {
    Mu2Result r;
    r.pair_values = {s.pair(Pair::AB), s.pair(Pair::AE), s.pair(Pair::BE)};
    const auto i = arg_extremum(r.pair_values, true);
    r.branch = static_cast<Pair>(i);
    r.value = r.pair_values[i];
    return r;
}

Mu2Result max_pair_information(const DensityMatrix& rho_tri) {
    return max_pair_information(tripartite_entropies(rho_tri));
}

MonogamyLedger monogamy_ledger(const TripartiteEntropies& s, double t) {
    const auto tau = genuine_tripartite_tau(s);
    const auto mu2 = max_pair_information(s);
    const double ln2 = std::log(2.0);
    MonogamyLedger out;
    out.t = t;
    out.total_info = 3.0 * ln2 - s.abe;
    out.local_info = (ln2 - s.a) + (ln2 - s.b) + (ln2 - s.e);
    out.mu2 = mu2.value;
    out.mu2_branch = mu2.branch;
    out.tau = tau.value;
    out.tau_branch = tau.branch;
    out.residual = out.total_info - out.local_info - out.mu2 - out.tau;
    out.branch_complementary = complement_pair(tau.branch) == mu2.branch;
    return out;
}

MonogamyLedger monogamy_ledger(const DensityMatrix& rho_tri, double t) {
    return monogamy_ledger(tripartite_entropies(rho_tri), t);
}

}  // namespace tricorr
