// measures.hpp: entropies, mutual informations, concurrence, genuine
// tripartite correlations and the monogamy ledger. All logarithms are natural
// (nats).

#pragma once

#include "tricorr/densemat.hpp"

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tricorr {

/// A bipartition of a state's layout: `group` against everything else.
class BipartitionCut {
public:
    /// Throws DomainError unless `group` is a non-empty proper subset of
    /// `layout`'s labels.
    BipartitionCut(const SubsystemLayout& layout, std::vector<std::string> group);

    const std::vector<std::string>& group() const noexcept { return group_; }
    const std::vector<std::string>& complement() const noexcept { return complement_; }

private:
    std::vector<std::string> group_;
    std::vector<std::string> complement_;
};

/// The three cuts of A⊗B⊗E, in tie-break order.
enum class Cut { AB_E = 0, AE_B = 1, BE_A = 2 };
/// The three two-party reductions, in tie-break order.
enum class Pair { AB = 0, AE = 1, BE = 2 };

std::string_view to_string(Cut cut);
std::string_view to_string(Pair pair);
/// The pair inside a cut's two-party group (AB|E -> AB, ...).
Pair complement_pair(Cut cut);

/// Values within this distance of the extremum count as tied; the first in
/// the fixed order wins.
inline constexpr double kBranchTieTolerance = 1e-12;

/// −Tr ρ ln ρ over the clamped spectrum (0 ln 0 = 0).
double von_neumann_entropy(const DensityMatrix& rho);

/// S(group) + S(complement) − S(whole).
double mutual_information(const DensityMatrix& rho, const BipartitionCut& cut);

/// Mutual information of the two-party reduction on (first, second).
double pair_mutual_information(const DensityMatrix& rho,
                               const std::pair<std::string, std::string>& pair);

/// Wootters concurrence of a two-qubit state, in [0, 1].
double concurrence(const DensityMatrix& rho_ab);

/// ln(dim) − S(ρ).
double state_information(const DensityMatrix& rho);

/// Σ over single parties of (ln d_i − S(ρ_i)).
double local_information(const DensityMatrix& rho);

/// Every entropy of an A⊗B⊗E state.
struct TripartiteEntropies {
    double a = 0, b = 0, e = 0;
    double ab = 0, ae = 0, be = 0;
    double abe = 0;

    double cut(Cut c) const;    // I(ij, k)
    double pair(Pair p) const;  // I(i, j)
};

/// Throws DomainError unless `rho` carries the (A, B, E) qubit layout.
TripartiteEntropies tripartite_entropies(const DensityMatrix& rho);

struct TauResult {
    double value = 0;
    Cut branch = Cut::AB_E;
    std::array<double, 3> cut_values{};  // AB|E, AE|B, BE|A
};

/// τ = min over the three cuts of the cut mutual information.
TauResult genuine_tripartite_tau(const DensityMatrix& rho_tri);
TauResult genuine_tripartite_tau(const TripartiteEntropies& s);

struct Mu2Result {
    double value = 0;
    Pair branch = Pair::AB;
    std::array<double, 3> pair_values{};  // AB, AE, BE
};

/// μ₂ = max over the three two-party reductions of their mutual information.
Mu2Result max_pair_information(const DensityMatrix& rho_tri);
Mu2Result max_pair_information(const TripartiteEntropies& s);

/// Decomposition 𝓘 vs 𝓘_LOC + μ₂ + τ. residual = 𝓘 − 𝓘_LOC − μ₂ − τ is never
/// positive beyond round-off and vanishes when the μ₂ pair lies inside the
/// minimizing cut's group (branch_complementary).
struct MonogamyLedger {
    double t = 0;  // Ωt
    double total_info = 0;
    double local_info = 0;
    double mu2 = 0;
    Pair mu2_branch = Pair::AB;
    double tau = 0;
    Cut tau_branch = Cut::AB_E;
    double residual = 0;
    bool branch_complementary = false;
};

MonogamyLedger monogamy_ledger(const DensityMatrix& rho_tri, double t);
MonogamyLedger monogamy_ledger(const TripartiteEntropies& s, double t);

}  // namespace tricorr
