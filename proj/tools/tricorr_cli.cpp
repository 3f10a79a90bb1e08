// tricorr: sweep the two-qubit + random field model over Ωt and write the
// correlation series (CSV), an event sidecar (JSON), an optional SVG chart and
// a run manifest.
//
// Exit codes: 0 ok, 2 configuration error, 3 I/O error, 4 empty result.

#include "tricorr/config.hpp"
#include "tricorr/output.hpp"
#include "tricorr/sweep.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace tricorr;
using namespace tricorr::cli;

struct FlagSpec {
    const char* key;
    const char* help;
};

// Keys from known_keys(); the flag is "--" + key with '_' replaced by '-'.
constexpr FlagSpec kFlags[] = {
    {"preset", "figure preset: fig2a..fig5b"},
    {"x", "initial-state parameter x in [0, 1]"},
    {"y", "mixing weight y in [0, 1]"},
    {"z", "initial-state parameter z in [0, 1]"},
    {"sigma_ratio", "Rabi-frequency spread σ/Ω (0 for a fixed frequency)"},
    {"omega", "central Rabi frequency Ω"},
    {"t_max", "end of the Ωt grid"},
    {"samples", "number of grid samples"},
    {"quadrature_order", "Gauss-Hermite order for σ > 0"},
    {"phase_convention", "field phases: pm-half-pi or zero-pi"},
    {"tol_dark", "ν threshold for dark periods"},
    {"tol_freeze", "|τ - μ₂(0)| threshold for freezing"},
    {"tol_refine", "event endpoint refinement tolerance"},
    {"flux_step", "central-difference step in Ωt"},
    {"out_csv", "CSV output path (stdout when omitted)"},
    {"out_svg", "SVG chart output path"},
    {"out_events", "event sidecar path (default <csv>.events.json)"},
    {"out_manifest", "run manifest path (default <csv>.manifest.json)"},
    {"quantities", "comma-separated CSV columns for the SVG chart"},
    {"workers", "sweep threads (0 = hardware concurrency)"},
};

std::string flag_name(std::string key) {
    for (auto& c : key) {
        if (c == '_') c = '-';
    }
    return "--" + key;
}

int run(const std::optional<std::string>& config_path, const Settings& flags) {
    const auto started = std::chrono::steady_clock::now();
    const RunOptions opts = parse_config(config_path, flags);

    std::vector<std::string> quantities{"nu", "tau"};
    if (opts.quantities) quantities = *opts.quantities;
    if (opts.out_svg && quantities.empty()) throw ConfigError("key 'quantities': empty quantity list");

    const Evaluator evaluator(opts.sim);
    const auto records = run_time_sweep(evaluator, opts.workers);
    if (records.empty()) throw EmptyResultError("sweep produced no records");
    const auto events = analyze_events(records, evaluator);

    // Render first so a bad quantity name fails before anything is written.
    std::optional<std::string> svg;
    if (opts.out_svg) svg = render_svg(records, quantities);

    RunManifest manifest;
    manifest.config = config_echo(opts);
    manifest.version = std::string(version());

    std::optional<std::string> events_path = opts.out_events;
    if (opts.out_csv) {
        if (!events_path) events_path = *opts.out_csv + ".events.json";
        emit_csv(records, events, opts.sim, *opts.out_csv, *events_path);
        manifest.artifacts.emplace_back("csv", *opts.out_csv);
    } else {
        write_csv(records, std::cout);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing CSV to stdout");
        if (events_path) {
            std::ofstream out(*events_path, std::ios::binary | std::ios::trunc);
            out << events_document(events, opts.sim);
            if (!out.flush()) throw IoError("cannot write '" + *events_path + "'");
        }
    }
    if (events_path) manifest.artifacts.emplace_back("events", *events_path);

    if (svg) {
        std::ofstream out(*opts.out_svg, std::ios::binary | std::ios::trunc);
        out << *svg;
        if (!out.flush()) throw IoError("cannot write '" + *opts.out_svg + "'");
        manifest.artifacts.emplace_back("svg", *opts.out_svg);
    }

    std::optional<std::string> manifest_path = opts.out_manifest;
    if (!manifest_path && opts.out_csv) manifest_path = *opts.out_csv + ".manifest.json";
    if (manifest_path) {
        manifest.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_manifest(manifest, *manifest_path);
    }

    std::cerr << "samples: " << records.size() << ", dark periods: " << events.dark_periods.size()
              << ", freeze intervals: " << events.freeze_intervals.size() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation dynamics of two qubits under a random classical field"};
    app.set_version_flag("--version", std::string(version()));

    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "flat JSON config file (or a run manifest)");

    std::map<std::string, std::string> raw;
    for (const auto& f : kFlags) app.add_option(flag_name(f.key), raw[f.key], f.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    Settings flags;
    for (const auto& f : kFlags) {
        if (app.count(flag_name(f.key)) > 0) flags[f.key] = raw[f.key];
    }

    try {
        return run(config_path, flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const EmptyResultError& e) {
        std::cerr << "empty result: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
