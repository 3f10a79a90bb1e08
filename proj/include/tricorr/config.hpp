// config.hpp: figure presets, flat key/value config files
// and flag overrides.
//
// Precedence, lowest to highest: built-in defaults, preset, config file keys,
// command-line flags. The config file is a flat JSON object whose values are
// strings, numbers or booleans. A run manifest written by the CLI is also
// accepted; its "config" member is used.

#pragma once

#include "tricorr/dynamics.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tricorr::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3, kExitEmpty = 4 };

/// Bad key, value or file. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unwritable output. Maps to exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nothing to write. Maps to exit code 4.
class EmptyResultError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ScalarValue = std::variant<std::string, double, bool>;
using Settings = std::map<std::string, ScalarValue>;

struct Preset {
    std::string name;
    InitialStateParams initial;
    double sigma_ratio = 0;
    std::vector<std::string> quantities;  // default SVG curves
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);

/// Every key accepted in config files; flags use the same names with '-'
/// in place of '_'.
const std::vector<std::string>& known_keys();

struct RunOptions {
    SimConfig sim;
    std::string preset;
    double sigma_ratio = 0;
    std::optional<std::string> out_csv;
    std::optional<std::string> out_svg;
    std::optional<std::string> out_events;
    std::optional<std::string> out_manifest;
    std::optional<std::vector<std::string>> quantities;  // SVG curves; unset means preset or default
    std::size_t workers = 0;
};

/// Reads a flat JSON object (or a manifest's "config" member).
Settings load_config_file(const std::string& path);

/// Applies defaults, preset, `file` and then `flags`; validates ranges.
RunOptions resolve_options(const Settings& file, const Settings& flags);

/// load_config_file (when a path is given) followed by resolve_options.
RunOptions parse_config(const std::optional<std::string>& path, const Settings& flags);

/// Flat settings that reproduce `opts` exactly when fed back through
/// resolve_options (output paths excluded).
Settings config_echo(const RunOptions& opts);

}  // namespace tricorr::cli
