#include "tricorr/config.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tricorr::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCorrelationQuantities{"nu", "tau"};
const std::vector<std::string> kMonogamyQuantities{"tau", "i_total", "mu2", "i_loc"};

std::string type_name(const ScalarValue& v) {
    if (std::holds_alternative<std::string>(v)) return "string";
    if (std::holds_alternative<double>(v)) return "number";
    return "boolean";
}

double as_number(const std::string& key, const ScalarValue& v) {
    if (const auto* d = std::get_if<double>(&v)) {
        if (!std::isfinite(*d)) throw ConfigError("key '" + key + "': value must be finite");
        return *d;
    }
    if (const auto* s = std::get_if<std::string>(&v)) {
        // Flags arrive as text.
        std::istringstream is(*s);
        is.imbue(std::locale::classic());
        double d = 0;
        if (is >> d && is.peek() == std::char_traits<char>::eof() && std::isfinite(d)) return d;
    }
    throw ConfigError("key '" + key + "': expected a number, got " + type_name(v));
}

std::size_t as_count(const std::string& key, const ScalarValue& v) {
    const double d = as_number(key, v);
    if (d < 0 || d != std::floor(d) || d > 1e9) {
        throw ConfigError("key '" + key + "': expected a non-negative integer");
    }
    return static_cast<std::size_t>(d);
}

std::string as_string(const std::string& key, const ScalarValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw ConfigError("key '" + key + "': expected a string, got " + type_name(v));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void check_known(const Settings& s) {
    const auto& keys = known_keys();
    for (const auto& [key, value] : s) {
        (void)value;
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
}

void require_range(const std::string& key, double v, double lo, double hi) {
    if (v < lo || v > hi) {
        std::ostringstream os;
        os << "key '" << key << "': value " << v << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
}

void require_positive(const std::string& key, double v) {
    if (!(v > 0.0)) throw ConfigError("key '" + key + "': value must be positive");
}

void apply(RunOptions& o, const std::string& key, const ScalarValue& v) {
    auto& sim = o.sim;
    if (key == "preset") {
        // Handled before the other keys.
    } else if (key == "x") {
        sim.initial.x = as_number(key, v);
        require_range(key, sim.initial.x, 0.0, 1.0);
    } else if (key == "y") {
        sim.initial.y = as_number(key, v);
        require_range(key, sim.initial.y, 0.0, 1.0);
    } else if (key == "z") {
        sim.initial.z = as_number(key, v);
        require_range(key, sim.initial.z, 0.0, 1.0);
    } else if (key == "sigma_ratio") {
        o.sigma_ratio = as_number(key, v);
        if (o.sigma_ratio < 0.0) throw ConfigError("key 'sigma_ratio': value must be >= 0");
    } else if (key == "omega") {
        sim.rabi.omega = as_number(key, v);
        require_positive(key, sim.rabi.omega);
    } else if (key == "t_max") {
        sim.grid.t_max = as_number(key, v);
        require_positive(key, sim.grid.t_max);
    } else if (key == "samples") {
        sim.grid.samples = as_count(key, v);
        if (sim.grid.samples < 2) throw ConfigError("key 'samples': value must be >= 2");
    } else if (key == "quadrature_order") {
        sim.quadrature_order = as_count(key, v);
    } else if (key == "phase_convention") {
        const auto name = as_string(key, v);
        try {
            sim.phase = PhaseConvention::from_name(name);
        } catch (const DomainError& e) {
            throw ConfigError("key 'phase_convention': " + std::string(e.what()));
        }
    } else if (key == "tol_dark") {
        sim.tolerances[tolerance::kDark] = as_number(key, v);
        require_positive(key, sim.tolerances[tolerance::kDark]);
    } else if (key == "tol_freeze") {
        sim.tolerances[tolerance::kFreeze] = as_number(key, v);
        require_positive(key, sim.tolerances[tolerance::kFreeze]);
    } else if (key == "tol_refine") {
        sim.tolerances[tolerance::kRefine] = as_number(key, v);
        require_positive(key, sim.tolerances[tolerance::kRefine]);
    } else if (key == "flux_step") {
        sim.tolerances[tolerance::kFluxStep] = as_number(key, v);
        require_positive(key, sim.tolerances[tolerance::kFluxStep]);
    } else if (key == "out_csv") {
        o.out_csv = as_string(key, v);
    } else if (key == "out_svg") {
        o.out_svg = as_string(key, v);
    } else if (key == "out_events") {
        o.out_events = as_string(key, v);
    } else if (key == "out_manifest") {
        o.out_manifest = as_string(key, v);
    } else if (key == "quantities") {
        o.quantities = split_list(as_string(key, v));
    } else if (key == "workers") {
        o.workers = as_count(key, v);
    }
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        const InitialStateParams rho1{1.0, 0.9, 1.0};
        const InitialStateParams rho2{0.6, 0.8, 0.3};
        return std::vector<Preset>{
            {"fig2a", rho1, 0.0, kCorrelationQuantities},
            {"fig2b", rho1, 0.1, kCorrelationQuantities},
            {"fig3a", rho2, 0.0, kCorrelationQuantities},
            {"fig3b", rho2, 0.1, kCorrelationQuantities},
            {"fig4a", rho1, 0.0, kMonogamyQuantities},
            {"fig4b", rho1, 0.1, kMonogamyQuantities},
            {"fig5a", rho2, 0.0, kMonogamyQuantities},
            {"fig5b", rho2, 0.1, kMonogamyQuantities},
        };
    }();
    return all;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "preset",     "x",          "y",         "z",          "sigma_ratio",
        "omega",      "t_max",      "samples",   "quadrature_order",
        "phase_convention",         "tol_dark",  "tol_freeze", "tol_refine",
        "flux_step",  "out_csv",    "out_svg",   "out_events", "out_manifest",
        "quantities", "workers"};
    return keys;
}

Settings load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed config file '" + path + "': " + e.what());
    }
    if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
        doc = doc["config"];
    }
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");

    Settings out;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else if (value.is_boolean()) {
            out[key] = value.get<bool>();
        } else if (value.is_number()) {
            out[key] = value.get<double>();
        } else {
            throw ConfigError("key '" + key + "': only string, number and boolean values are allowed");
        }
    }
    return out;
}

RunOptions resolve_options(const Settings& file, const Settings& flags) {
    check_known(file);
    check_known(flags);

    RunOptions o;
    std::string preset_name;
    if (auto it = file.find("preset"); it != file.end()) preset_name = as_string("preset", it->second);
    if (auto it = flags.find("preset"); it != flags.end()) preset_name = as_string("preset", it->second);
    if (!preset_name.empty()) {
        const auto preset = find_preset(preset_name);
        if (!preset) throw ConfigError("key 'preset': unknown preset '" + preset_name + "'");
        o.preset = preset->name;
        o.sim.initial = preset->initial;
        o.sigma_ratio = preset->sigma_ratio;
        o.quantities = preset->quantities;
    }

    for (const auto& [key, value] : file) apply(o, key, value);
    for (const auto& [key, value] : flags) apply(o, key, value);

    o.sim.rabi.sigma = o.sigma_ratio * o.sim.rabi.omega;
    if (o.sim.rabi.sigma > 0.0 && o.sim.quadrature_order < 2) {
        throw ConfigError("key 'quadrature_order': must be >= 2 when sigma_ratio > 0");
    }
    try {
        o.sim.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return o;
}

RunOptions parse_config(const std::optional<std::string>& path, const Settings& flags) {
    const Settings file = path ? load_config_file(*path) : Settings{};
    return resolve_options(file, flags);
}

Settings config_echo(const RunOptions& o) {
    Settings s;
    if (!o.preset.empty()) s["preset"] = o.preset;
    s["x"] = o.sim.initial.x;
    s["y"] = o.sim.initial.y;
    s["z"] = o.sim.initial.z;
    s["sigma_ratio"] = o.sigma_ratio;
    s["omega"] = o.sim.rabi.omega;
    s["t_max"] = o.sim.grid.t_max;
    s["samples"] = static_cast<double>(o.sim.grid.samples);
    s["quadrature_order"] = static_cast<double>(o.sim.quadrature_order);
    s["phase_convention"] = o.sim.phase.name();
    s["tol_dark"] = o.sim.tol(tolerance::kDark);
    s["tol_freeze"] = o.sim.tol(tolerance::kFreeze);
    s["tol_refine"] = o.sim.tol(tolerance::kRefine);
    s["flux_step"] = o.sim.tol(tolerance::kFluxStep);
    if (o.quantities) {
        std::string joined;
        for (const auto& q : *o.quantities) joined += (joined.empty() ? "" : ",") + q;
        s["quantities"] = joined;
    }
    return s;
}

}  // namespace tricorr::cli
