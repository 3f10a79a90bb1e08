// sweep.hpp: time-grid evaluation, information-flux derivatives and event
// detection (dark periods of entanglement, freezing of τ, critical times).
//
// All times are the dimensionless product Ωt, and all derivatives are taken
// with respect to Ωt.

#pragma once

#include "tricorr/dynamics.hpp"
#include "tricorr/measures.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tricorr {

/// One time sample of every tracked quantity.
struct CorrelationRecord {
    double omega_t = 0;
    double nu = 0;
    double tau = 0;
    Cut tau_branch = Cut::AB_E;
    double mu2 = 0;
    Pair mu2_branch = Pair::AB;
    double local_info = 0;
    double total_info = 0;
    std::array<double, 3> cut_mi{};   // AB|E, AE|B, BE|A
    std::array<double, 3> pair_mi{};  // AB, AE, BE
    TripartiteEntropies entropies;

    MonogamyLedger ledger() const;
};

/// Raised by the sweep when a sample fails; carries the offending Ωt.
class SweepError : public DomainError {
public:
    SweepError(double omega_t, const std::string& what);
    double omega_t() const noexcept { return omega_t_; }

private:
    double omega_t_;
};

/// Evaluates states and records at arbitrary Ωt for one configuration.
/// Immutable after construction; safe to share across threads.
class Evaluator {
public:
    explicit Evaluator(SimConfig cfg);

    const SimConfig& config() const noexcept { return cfg_; }
    const DensityMatrix& initial_state() const noexcept { return rho0_; }

    DensityMatrix tripartite_at(double omega_t) const;
    CorrelationRecord record_at(double omega_t) const;

private:
    SimConfig cfg_;
    DensityMatrix rho0_;
};

/// One record per grid sample, strictly increasing Ωt. `workers` = 0 picks
/// the hardware concurrency; output is identical for any worker count.
std::vector<CorrelationRecord> run_time_sweep(const SimConfig& cfg, std::size_t workers = 0);
std::vector<CorrelationRecord> run_time_sweep(const Evaluator& evaluator, std::size_t workers = 0);

// --- information fluxes ----------------------------------------------------

/// Central-difference derivatives d/d(Ωt) from states re-evaluated at
/// Ωt ± h. Branches are those at Ωt; `branch_stable` is false when either
/// argmin or argmax differs at Ωt ± h.
struct FluxSample {
    double omega_t = 0;
    double h = 0;
    Cut tau_branch = Cut::AB_E;
    Pair mu2_branch = Pair::AB;
    bool branch_stable = true;
    bool branch_complementary = true;

    double d_local_info = 0;
    double d_mu2 = 0;
    double d_tau = 0;
    double d_total_info = 0;
    TripartiteEntropies d_entropy;  // derivatives of every entropy
};

FluxSample flux_derivatives(const Evaluator& evaluator, double omega_t, double h);

/// Residuals of the closed-system flux identities for the observed branches.
/// These forms use dS_A = dS_E = dS_ABE = dS_BE = dS_AE = 0, which holds at
/// σ = 0:
///   τ:     AB|E → dS_AB,       BE|A → 0,    AE|B → dS_B
///   μ₂:    AB   → dS_B − dS_AB, BE  → dS_B, AE   → 0
///   𝓘_LOC: −dS_B
///   sum:   d𝓘_LOC + dμ₂ + dτ − d𝓘 (zero when the branches are complementary)
struct FluxIdentityResidues {
    double tau = 0;
    double mu2 = 0;
    double local_info = 0;
    double sum = 0;
    /// max |dS| over the entropies that are constant in a closed system.
    double closed_system_drift = 0;
};

FluxIdentityResidues flux_identity_residues(const FluxSample& flux);

// --- events -----------------------------------------------------------------

struct Interval {
    double start = 0;
    double end = 0;

    bool overlaps(const Interval& other) const noexcept {
        return start <= other.end && other.start <= end;
    }
};

/// Maximal runs of consecutive samples where ν ≤ tol spanning at least two
/// samples. Interior endpoints are refined by bisection to `refine_tol` when
/// an evaluator is supplied.
std::vector<Interval> detect_dark_periods(std::span<const CorrelationRecord> records, double tol,
                                          const Evaluator* evaluator = nullptr,
                                          double refine_tol = 1e-6);

struct FreezeReport {
    std::vector<Interval> freeze_intervals;
    std::optional<double> t_star;     // first freeze onset
    std::optional<double> t_max_mu2;  // first strict local maximum of μ₂ after t_star
};

/// Runs where |τ − μ₂(0)| ≤ tol lasting at least two grid steps.
FreezeReport detect_freezing(std::span<const CorrelationRecord> records, double mu2_at_zero,
                             double tol, const Evaluator* evaluator = nullptr,
                             double refine_tol = 1e-6);

using RecordField = std::function<double(const CorrelationRecord&)>;

/// Strict interior local maxima on a 3-point stencil (differences beyond
/// 1e-12), refined by golden-section search to `refine_tol` when an evaluator
/// is supplied.
std::vector<double> local_maxima(std::span<const CorrelationRecord> records, const RecordField& field,
                                 const Evaluator* evaluator = nullptr, double refine_tol = 1e-6);
/// Same for minima; plateaus are reported at every plateau sample when
/// `include_plateaus` is set.
std::vector<double> local_minima(std::span<const CorrelationRecord> records, const RecordField& field,
                                 bool include_plateaus = false, const Evaluator* evaluator = nullptr,
                                 double refine_tol = 1e-6);

/// Indices i such that the τ or μ₂ branch differs between samples i−1 and i.
std::vector<std::size_t> branch_switch_indices(std::span<const CorrelationRecord> records);

struct BranchSegment {
    double start = 0;
    double end = 0;
    Cut tau_branch = Cut::AB_E;
    Pair mu2_branch = Pair::AB;
};

/// Run-length encoding of the (τ, μ₂) branch pair over the grid.
std::vector<BranchSegment> branch_schedule(std::span<const CorrelationRecord> records);

struct EventReport {
    std::vector<Interval> dark_periods;
    std::vector<Interval> freeze_intervals;
    std::optional<double> t_star;
    std::optional<double> t_max_mu2;
    std::vector<BranchSegment> branch_schedule;
    double mu2_at_zero = 0;
};

/// Runs every detector with the tolerances in the evaluator's config.
EventReport analyze_events(std::span<const CorrelationRecord> records, const Evaluator& evaluator);

}  // namespace tricorr
