#include "tricorr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace tricorr {

namespace {

std::string format_time(double omega_t) {
    std::ostringstream os;
    os.precision(12);
    os << omega_t;
    return os.str();
}

double central(double plus, double minus, double h) { return (plus - minus) / (2.0 * h); }

}  // namespace

SweepError::SweepError(double omega_t, const std::string& what)
    : DomainError("at Ωt = " + format_time(omega_t) + ": " + what), omega_t_(omega_t) {}

MonogamyLedger CorrelationRecord::ledger() const { return monogamy_ledger(entropies, omega_t); }

Evaluator::Evaluator(SimConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))), rho0_(initial_two_qubit_state(cfg_.initial)) {}

DensityMatrix Evaluator::tripartite_at(double omega_t) const {
    return build_tripartite_state(rho0_, cfg_, omega_t / cfg_.rabi.omega);
}

CorrelationRecord Evaluator::record_at(double omega_t) const {
    try {
        const auto rho = tripartite_at(omega_t);
        CorrelationRecord r;
        r.omega_t = omega_t;
        r.entropies = tripartite_entropies(rho);
        r.nu = concurrence(partial_trace(rho, {"A", "B"}));

        const auto ledger = monogamy_ledger(r.entropies, omega_t);
        const auto tau = genuine_tripartite_tau(r.entropies);
        const auto mu2 = max_pair_information(r.entropies);
        r.tau = tau.value;
        r.tau_branch = tau.branch;
        r.cut_mi = tau.cut_values;
        r.mu2 = mu2.value;
        r.mu2_branch = mu2.branch;
        r.pair_mi = mu2.pair_values;
        r.local_info = ledger.local_info;
        r.total_info = ledger.total_info;
        return r;
    } catch (const SweepError&) {
        throw;
    } catch (const std::exception& e) {
        throw SweepError(omega_t, e.what());
    }
}

std::vector<CorrelationRecord> run_time_sweep(const Evaluator& evaluator, std::size_t workers) {
    const auto& grid = evaluator.config().grid;
    const std::size_t n = grid.samples;
    std::vector<CorrelationRecord> records(n);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);

    std::vector<std::exception_ptr> failures(workers);
    auto run_chunk = [&](std::size_t w) {
        try {
            // Strided assignment; each slot is written by exactly one worker.
            for (std::size_t i = w; i < n; i += workers) {
                records[i] = evaluator.record_at(grid.omega_t(i));
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }
    // Report the failure at the earliest worker index, independent of timing.
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return records;
}

std::vector<CorrelationRecord> run_time_sweep(const SimConfig& cfg, std::size_t workers) {
    return run_time_sweep(Evaluator(cfg), workers);
}

// ---------------------------------------------------------------------------

FluxSample flux_derivatives(const Evaluator& evaluator, double omega_t, double h) {
    if (!(h > 0.0)) throw DomainError("flux_derivatives: step must be positive");
    const auto mid = evaluator.record_at(omega_t);
    const auto plus = evaluator.record_at(omega_t + h);
    const auto minus = evaluator.record_at(omega_t - h);

    FluxSample f;
    f.omega_t = omega_t;
    f.h = h;
    f.tau_branch = mid.tau_branch;
    f.mu2_branch = mid.mu2_branch;
    f.branch_stable = plus.tau_branch == mid.tau_branch && minus.tau_branch == mid.tau_branch &&
                      plus.mu2_branch == mid.mu2_branch && minus.mu2_branch == mid.mu2_branch;
    f.branch_complementary = complement_pair(mid.tau_branch) == mid.mu2_branch;

    f.d_local_info = central(plus.local_info, minus.local_info, h);
    f.d_mu2 = central(plus.mu2, minus.mu2, h);
    f.d_tau = central(plus.tau, minus.tau, h);
    f.d_total_info = central(plus.total_info, minus.total_info, h);

    const auto& p = plus.entropies;
    const auto& m = minus.entropies;
    f.d_entropy.a = central(p.a, m.a, h);
    f.d_entropy.b = central(p.b, m.b, h);
    f.d_entropy.e = central(p.e, m.e, h);
    f.d_entropy.ab = central(p.ab, m.ab, h);
    f.d_entropy.ae = central(p.ae, m.ae, h);
    f.d_entropy.be = central(p.be, m.be, h);
    f.d_entropy.abe = central(p.abe, m.abe, h);
    return f;
}

FluxIdentityResidues flux_identity_residues(const FluxSample& f) {
    const auto& d = f.d_entropy;
    FluxIdentityResidues r;

    double tau_expected = 0.0;
    switch (f.tau_branch) {
        case Cut::AB_E: tau_expected = d.ab; break;
        case Cut::BE_A: tau_expected = 0.0; break;
        case Cut::AE_B: tau_expected = d.b; break;
    }
    double mu2_expected = 0.0;
    switch (f.mu2_branch) {
        case Pair::AB: mu2_expected = d.b - d.ab; break;
        case Pair::BE: mu2_expected = d.b; break;
        case Pair::AE: mu2_expected = 0.0; break;
    }
    r.tau = f.d_tau - tau_expected;
    r.mu2 = f.d_mu2 - mu2_expected;
    r.local_info = f.d_local_info + d.b;
    r.sum = f.d_local_info + f.d_mu2 + f.d_tau - f.d_total_info;
    r.closed_system_drift = std::max({std::abs(d.a), std::abs(d.e), std::abs(d.abe),
                                      std::abs(d.be), std::abs(d.ae)});
    return r;
}

}  // namespace tricorr
