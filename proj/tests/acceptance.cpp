// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never loosened.

#include "test_support.hpp"

#include "tricorr/config.hpp"
#include "tricorr/dynamics.hpp"
#include "tricorr/measures.hpp"
#include "tricorr/output.hpp"
#include "tricorr/sweep.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tricorr;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

SimConfig preset_config(const std::string& name,
                        PhaseConvention conv = PhaseConvention::pm_half_pi()) {
    auto opts = cli::resolve_options({}, {{"preset", name}});
    opts.sim.phase = conv;
    return opts.sim;
}

// Cached full-grid sweeps keyed by preset and convention.
struct Run {
    Evaluator evaluator;
    std::vector<CorrelationRecord> records;
};

const Run& run_for(const std::string& preset, PhaseConvention conv = PhaseConvention::pm_half_pi()) {
    static std::vector<std::pair<std::string, std::unique_ptr<Run>>> cache;
    const std::string key = preset + "/" + conv.name();
    for (const auto& [k, r] : cache) {
        if (k == key) return *r;
    }
    Evaluator ev(preset_config(preset, conv));
    auto records = run_time_sweep(ev);
    cache.emplace_back(key, std::make_unique<Run>(Run{std::move(ev), std::move(records)}));
    return *cache.back().second;
}

const std::vector<std::string> kAllPresets{"fig2a", "fig2b", "fig3a", "fig3b",
                                           "fig4a", "fig4b", "fig5a", "fig5b"};
// One preset per (initial state, σ) combination.
const std::vector<std::string> kStateSigma{"fig2a", "fig2b", "fig3a", "fig3b"};

bool starts_in_every_cycle(const std::vector<Interval>& intervals, double t_max) {
    for (int k = 0; 2 * pi * (k + 1) <= t_max; ++k) {
        const bool found = std::any_of(intervals.begin(), intervals.end(), [&](const Interval& iv) {
            return iv.start >= 2 * pi * k && iv.start < 2 * pi * (k + 1);
        });
        if (!found) return false;
    }
    return true;
}

Outcome c1_initial_concurrence() {
    const double nu0 = run_for("fig2a").records.front().nu;
    const double err = std::abs(nu0 - 0.8);
    return {err <= 1e-10, "fig2a nu(0) = " + cli::format_number(nu0) + ", |err| = " + sci(err) + " (tol 1e-10)"};
}

Outcome c2_initial_tau() {
    double worst = 0.0;
    for (const auto& p : kAllPresets) worst = std::max(worst, std::abs(run_for(p).records.front().tau));
    return {worst <= 1e-10, "max |tau(0)| over all presets = " + sci(worst) + " (tol 1e-10)"};
}

Outcome c3_conservation() {
    bool ok = true;
    std::ostringstream os;
    for (const auto& p : {"fig2a", "fig3a"}) {
        const auto& recs = run_for(p).records;
        double drift = 0.0;
        for (const auto& r : recs) drift = std::max(drift, std::abs(r.total_info - recs.front().total_info));
        ok = ok && drift <= 1e-9 && recs.size() == 2000;
        os << p << " drift " << sci(drift) << "; ";
    }
    for (const auto& p : {"fig2b", "fig3b"}) {
        const auto& recs = run_for(p).records;
        const double i0 = recs.front().total_info, i30 = recs.back().total_info;
        ok = ok && recs.back().omega_t == 30.0 && i30 < i0;
        os << p << " I(30)-I(0) = " << sci(i30 - i0) << "; ";
    }
    os << "(tol 1e-9, strict decay at sigma = 0.1)";
    return {ok, os.str()};
}

Outcome c4_constant_cut() {
    bool ok = true;
    std::ostringstream os;
    for (const auto& p : kStateSigma) {
        const auto& recs = run_for(p).records;
        const double i_ab0 = recs.front().pair_mi[static_cast<int>(Pair::AB)];
        double worst = 0.0;
        for (const auto& r : recs) worst = std::max(worst, std::abs(r.cut_mi[static_cast<int>(Cut::BE_A)] - i_ab0));
        ok = ok && worst <= 1e-9;
        os << p << " " << sci(worst) << "; ";
    }
    os << "(tol 1e-9)";
    return {ok, os.str()};
}

Outcome c5_environment() {
    const DensityMatrix half(pauli::identity(2) / 2.0, SubsystemLayout({{"E", 2}}));
    double worst = 0.0;
    for (const auto& p : kStateSigma) {
        const auto& run = run_for(p);
        for (const auto& r : run.records) {
            const auto e = partial_trace(run.evaluator.tripartite_at(r.omega_t), {"E"});
            worst = std::max(worst, trace_distance(e, half));
        }
    }
    return {worst <= 1e-12, "max trace distance to I/2 = " + sci(worst) + " (tol 1e-12)"};
}

Outcome c6_be_decorrelation() {
    double worst = 0.0;
    for (const auto& p : kStateSigma) {
        for (const auto& r : run_for(p).records) worst = std::max(worst, r.pair_mi[static_cast<int>(Pair::BE)]);
    }
    return {worst <= 1e-9, "max I(B:E) = " + sci(worst) + " under pm-half-pi (tol 1e-9)"};
}

Outcome c7_ledger() {
    double worst_eq = 0.0, worst_ineq = 0.0;
    std::size_t complementary = 0, total = 0;
    for (const auto& p : kAllPresets) {
        for (const auto conv : {PhaseConvention::pm_half_pi(), PhaseConvention::zero_pi()}) {
            for (const auto& r : run_for(p, conv).records) {
                const auto l = r.ledger();
                ++total;
                if (l.branch_complementary) {
                    ++complementary;
                    worst_eq = std::max(worst_eq, std::abs(l.residual));
                }
                worst_ineq = std::max(worst_ineq, l.total_info - (l.tau + l.mu2 + l.local_info));
            }
        }
    }
    const bool ok = worst_eq <= 1e-9 && worst_ineq <= 1e-9;
    return {ok, "max |residual| at " + std::to_string(complementary) + "/" + std::to_string(total) +
                    " complementary samples = " + sci(worst_eq) + ", max violation of tau+mu2+I_loc >= I = " +
                    sci(worst_ineq) + " (tol 1e-9)"};
}

Outcome c8_phase_opposition() {
    const auto& run = run_for("fig2a");
    const auto& recs = run.records;
    const double h = run.evaluator.config().grid.spacing();
    const RecordField tau = [](const CorrelationRecord& r) { return r.tau; };
    const RecordField nu = [](const CorrelationRecord& r) { return r.nu; };
    const auto tau_max = local_maxima(recs, tau);
    const auto nu_min = local_minima(recs, nu, true);
    std::size_t matched = 0;
    for (double t : tau_max) {
        const bool near = std::any_of(nu_min.begin(), nu_min.end(),
                                      [&](double s) { return std::abs(s - t) <= h * (1 + 1e-9); });
        if (near) ++matched;
    }
    const auto events = analyze_events(recs, run.evaluator);
    const bool cycles = starts_in_every_cycle(events.dark_periods, 30.0);
    const bool smooth = events.freeze_intervals.empty();
    const bool ok = !tau_max.empty() && matched == tau_max.size() && cycles && smooth;
    return {ok, std::to_string(matched) + "/" + std::to_string(tau_max.size()) +
                    " tau maxima within one step of a nu minimum; dark period in every 2pi cycle: " +
                    (cycles ? "yes" : "no") + "; freeze intervals: " + std::to_string(events.freeze_intervals.size())};
}

Outcome c9_freezing() {
    std::ostringstream os;
    std::vector<std::string> reproducing;
    for (const auto conv : {PhaseConvention::pm_half_pi(), PhaseConvention::zero_pi()}) {
        bool conv_ok = true;
        for (const auto& p : {"fig3a", "fig5a"}) {
            const auto& run = run_for(p, conv);
            const auto events = analyze_events(run.records, run.evaluator);
            bool overlap = !events.freeze_intervals.empty();
            for (const auto& iv : events.freeze_intervals) {
                overlap = overlap && std::any_of(events.dark_periods.begin(), events.dark_periods.end(),
                                                 [&](const Interval& d) { return d.overlaps(iv); });
            }
            conv_ok = conv_ok && overlap && starts_in_every_cycle(events.freeze_intervals, 30.0);
            os << p << "/" << conv.name() << ": " << events.freeze_intervals.size() << " freeze intervals; ";
        }
        if (conv_ok) reproducing.push_back(conv.name());
    }
    // The ρ₁ input never reaches τ = μ₂(0) under either convention.
    for (const auto conv : {PhaseConvention::pm_half_pi(), PhaseConvention::zero_pi()}) {
        const auto& r1 = run_for("fig4a", conv);
        const auto f1 = detect_freezing(r1.records, r1.records.front().mu2, 1e-6);
        os << "fig4a/" << conv.name() << ": " << f1.freeze_intervals.size() << " freeze intervals; ";
    }
    std::string which = reproducing.empty() ? "none" : reproducing.front();
    for (std::size_t i = 1; i < reproducing.size(); ++i) which += "," + reproducing[i];
    os << "reproduced by: " << which;
    return {!reproducing.empty(), os.str()};
}

Outcome c10_flux() {
    double worst = 0.0, worst_sum = 0.0;
    std::size_t probes_total = 0;
    bool enough = true;
    std::ostringstream os;
    for (const auto& p : {"fig3a", "fig2a"}) {
        for (const auto conv : {PhaseConvention::pm_half_pi(), PhaseConvention::zero_pi()}) {
            const auto& run = run_for(p, conv);
            const auto& recs = run.records;
            const double h = run.evaluator.config().grid.spacing();
            const double step = run.evaluator.config().tol(tolerance::kFluxStep);
            const auto events = analyze_events(recs, run.evaluator);

            std::vector<double> avoid;
            for (std::size_t i : branch_switch_indices(recs)) {
                avoid.push_back(recs[i - 1].omega_t);
                avoid.push_back(recs[i].omega_t);
            }
            for (const auto* list : {&events.dark_periods, &events.freeze_intervals}) {
                for (const auto& iv : *list) {
                    avoid.push_back(iv.start);
                    avoid.push_back(iv.end);
                }
            }
            auto clear = [&](double t) {
                if (t < 2 * h || t > 30.0 - 2 * h) return false;
                for (double a : avoid) {
                    if (std::abs(t - a) <= 2 * h) return false;
                }
                return true;
            };

            std::size_t used = 0;
            for (int j = 0; j < 20; ++j) {
                // Nominal probe, nudged forward until it is clear of switches and events.
                double t = 0.4 + j * (29.2 / 19.0);
                FluxSample f;
                bool found = false;
                for (int tries = 0; tries < 200 && t < 30.0 - 2 * h; ++tries, t += 0.013) {
                    if (!clear(t)) continue;
                    f = flux_derivatives(run.evaluator, t, step);
                    if (f.branch_stable && f.branch_complementary) {
                        found = true;
                        break;
                    }
                }
                if (!found) continue;
                ++used;
                const auto res = flux_identity_residues(f);
                worst = std::max({worst, std::abs(res.tau), std::abs(res.mu2), std::abs(res.local_info)});
                worst_sum = std::max(worst_sum, std::abs(f.d_local_info + f.d_mu2 + f.d_tau));
            }
            probes_total += used;
            enough = enough && used == 20;
            os << p << "/" << conv.name() << " " << used << " probes; ";
        }
    }
    const bool ok = enough && worst <= 1e-5 && worst_sum <= 1e-5;
    os << "max identity residue " << sci(worst) << ", max |dI_loc+dmu2+dtau| " << sci(worst_sum) << " (tol 1e-5)";
    return {ok, os.str()};
}

Outcome c11_quadrature() {
    const std::complex<double> i1(0.0, 1.0);
    double worst = 0.0, worst_double = 0.0;
    const GaussianRabi rabi{1.0, 0.1};
    TimeGrid grid;
    for (const InitialStateParams p : {InitialStateParams{1.0, 0.9, 1.0}, InitialStateParams{0.6, 0.8, 0.3}}) {
        const auto rho0 = initial_two_qubit_state(p);
        for (const auto conv : {PhaseConvention::pm_half_pi(), PhaseConvention::zero_pi()}) {
            for (std::size_t i = 0; i < grid.samples; ++i) {
                const double t = grid.omega_t(i);
                ComplexMatrix want = ComplexMatrix::Zero(4, 4);
                for (double phi : conv.phases) {
                    ComplexMatrix k2(2, 2);
                    k2 << 0.0, std::exp(-i1 * phi), -std::exp(i1 * phi), 0.0;
                    const ComplexMatrix k = kron(pauli::identity(2), k2);
                    const auto& m = rho0.matrix();
                    want += 0.5 * (damped_trig_moment(TrigMoment::CosSq, 1.0, 0.1, t) * m +
                                   damped_trig_moment(TrigMoment::SinSq, 1.0, 0.1, t) * k * m * k.adjoint() +
                                   damped_trig_moment(TrigMoment::SinCos, 1.0, 0.1, t) * (k * m + m * k.adjoint()));
                }
                const auto got = evolve_two_qubit_gaussian(rho0, rabi, conv, t, 64);
                const auto doubled = evolve_two_qubit_gaussian(rho0, rabi, conv, t, 128);
                worst = std::max(worst, max_abs_diff(got.matrix(), want));
                worst_double = std::max(worst_double, max_abs_diff(got.matrix(), doubled.matrix()));
            }
        }
    }
    // The closed-form moments themselves against e^{-σ²t²} written out here.
    double worst_moment = 0.0;
    for (std::size_t i = 0; i < grid.samples; ++i) {
        const double t = grid.omega_t(i);
        const double d = std::exp(-0.01 * t * t);
        worst_moment = std::max(worst_moment,
                                std::abs(damped_trig_moment(TrigMoment::Cos, 1.0, 0.1, t) - std::cos(t) * d));
    }
    const bool ok = worst <= 1e-10 && worst_double <= 1e-10 && worst_moment <= 1e-14;
    return {ok, "max |GH64 - closed form| = " + sci(worst) + ", max |GH64 - GH128| = " + sci(worst_double) +
                    " (tol 1e-10)"};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TRICORR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome c12_determinism() {
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("tricorr_acceptance_" + std::to_string(rd()));
    fs::create_directories(dir);
    bool ok = true;
    std::ostringstream os;
    for (const auto& preset : {"fig2b", "fig5a"}) {
        std::string files[2][2];
        for (int k = 0; k < 2; ++k) {
            const auto csv = dir / (std::string(preset) + "_" + std::to_string(k) + ".csv");
            const auto events = dir / (std::string(preset) + "_" + std::to_string(k) + ".events.json");
            const int rc = run_cli("--preset " + std::string(preset) + " --out-csv " + csv.string() +
                                   " --out-events " + events.string());
            ok = ok && rc == 0;
            files[k][0] = slurp(csv);
            files[k][1] = slurp(events);
        }
        const bool same = !files[0][0].empty() && files[0][0] == files[1][0] && files[0][1] == files[1][1];
        ok = ok && same;
        os << preset << ": " << (same ? "identical" : "DIFFERENT") << " (" << files[0][0].size() << " B csv); ";
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 initial concurrence", c1_initial_concurrence},
        {"2 initial tripartite correlations", c2_initial_tau},
        {"3 conservation and decay of total information", c3_conservation},
        {"4 constant BE|A cut", c4_constant_cut},
        {"5 environment invariance", c5_environment},
        {"6 B-E decorrelation", c6_be_decorrelation},
        {"7 monogamy ledger", c7_ledger},
        {"8 phase opposition", c8_phase_opposition},
        {"9 freezing", c9_freezing},
        {"10 flux identities", c10_flux},
        {"11 quadrature oracle", c11_quadrature},
        {"12 determinism", c12_determinism},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed in " << sci(secs) << " s" << std::endl;
    return failed == 0 ? 0 : 1;
}
