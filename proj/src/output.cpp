#include "tricorr/output.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#ifndef TRICORR_VERSION
#define TRICORR_VERSION "0.0.0"
#endif

namespace tricorr::cli {

namespace {

using nlohmann::json;

std::string format_fixed(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

json interval_list(const std::vector<Interval>& intervals) {
    json out = json::array();
    for (const auto& iv : intervals) out.push_back(json::array({iv.start, iv.end}));
    return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json settings_to_json(const Settings& s) {
    json out = json::object();
    for (const auto& [key, value] : s) {
        std::visit([&](const auto& v) { out[key] = v; }, value);
    }
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

std::string_view version() { return TRICORR_VERSION; }

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "omega_t", "nu",      "tau",     "tau_branch", "mu2",   "mu2_branch", "i_loc",
        "i_total", "mi_ab_e", "mi_ae_b", "mi_be_a",    "mi_ab", "mi_ae",      "mi_be",
        "s_a",     "s_b",     "s_e",     "s_ab",       "s_abe"};
    return cols;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::optional<double> numeric_column(const CorrelationRecord& r, std::string_view name) {
    if (name == "omega_t") return r.omega_t;
    if (name == "nu") return r.nu;
    if (name == "tau") return r.tau;
    if (name == "mu2") return r.mu2;
    if (name == "i_loc") return r.local_info;
    if (name == "i_total") return r.total_info;
    if (name == "mi_ab_e") return r.cut_mi[0];
    if (name == "mi_ae_b") return r.cut_mi[1];
    if (name == "mi_be_a") return r.cut_mi[2];
    if (name == "mi_ab") return r.pair_mi[0];
    if (name == "mi_ae") return r.pair_mi[1];
    if (name == "mi_be") return r.pair_mi[2];
    if (name == "s_a") return r.entropies.a;
    if (name == "s_b") return r.entropies.b;
    if (name == "s_e") return r.entropies.e;
    if (name == "s_ab") return r.entropies.ab;
    if (name == "s_abe") return r.entropies.abe;
    return std::nullopt;
}

void write_csv(std::span<const CorrelationRecord> records, std::ostream& out) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out << ',';
            if (cols[i] == "tau_branch") {
                out << to_string(r.tau_branch);
            } else if (cols[i] == "mu2_branch") {
                out << to_string(r.mu2_branch);
            } else {
                out << format_number(*numeric_column(r, cols[i]));
            }
        }
        out << '\n';
    }
}

std::string events_document(const EventReport& events, const SimConfig& cfg) {
    json doc;
    doc["format"] = "tricorr-events/1";
    doc["phase_convention"] = cfg.phase.name();
    doc["mu2_at_zero"] = events.mu2_at_zero;
    doc["dark_periods"] = interval_list(events.dark_periods);
    doc["freeze_intervals"] = interval_list(events.freeze_intervals);
    doc["t_star"] = optional_number(events.t_star);
    doc["t_max_mu2"] = optional_number(events.t_max_mu2);
    json schedule = json::array();
    for (const auto& seg : events.branch_schedule) {
        schedule.push_back({{"start", seg.start},
                            {"end", seg.end},
                            {"tau_branch", std::string(to_string(seg.tau_branch))},
                            {"mu2_branch", std::string(to_string(seg.mu2_branch))}});
    }
    doc["branch_schedule"] = std::move(schedule);
    return doc.dump(2) + "\n";
}

void emit_csv(std::span<const CorrelationRecord> records, const EventReport& events,
              const SimConfig& cfg, const std::string& csv_path, const std::string& events_path) {
    if (records.empty()) throw EmptyResultError("no records to write");
    {
        auto out = open_output(csv_path);
        write_csv(records, out);
        finish(out, csv_path);
    }
    auto out = open_output(events_path);
    out << events_document(events, cfg);
    finish(out, events_path);
}

std::string render_svg(std::span<const CorrelationRecord> records,
                       const std::vector<std::string>& quantities) {
    if (quantities.empty()) throw ConfigError("svg: at least one quantity is required");
    for (const auto& q : quantities) {
        if (q == "omega_t" || std::find(csv_columns().begin(), csv_columns().end(), q) == csv_columns().end() ||
            (!records.empty() && !numeric_column(records.front(), q))) {
            throw ConfigError("svg: unknown quantity '" + q + "'");
        }
    }
    if (records.empty()) throw EmptyResultError("svg: no records to plot");

    constexpr double width = 800, height = 480;
    constexpr double left = 70, right = 150, top = 30, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const double t0 = records.front().omega_t;
    const double t1 = records.back().omega_t;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& q : quantities) {
        for (const auto& r : records) {
            const double v = *numeric_column(r, q);
            if (first) {
                lo = hi = v;
                first = false;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    lo = std::min(lo, 0.0);
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    hi += pad;
    const double span_t = (t1 > t0) ? (t1 - t0) : 1.0;

    auto sx = [&](double t) { return left + plot_w * (t - t0) / span_t; };
    auto sy = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double t = t0 + span_t * k / 5.0;
        const double v = lo + (hi - lo) * k / 5.0;
        os << "<text x=\"" << format_fixed(sx(t), 2) << "\" y=\"" << format_fixed(top + plot_h + 20, 2)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << format_fixed(t, 2) << "</text>\n";
        os << "<text x=\"" << format_fixed(left - 8, 2) << "\" y=\"" << format_fixed(sy(v) + 4, 2)
           << "\" font-size=\"12\" text-anchor=\"end\">" << format_fixed(v, 3) << "</text>\n";
    }
    os << "<text x=\"" << format_fixed(left + plot_w / 2, 2) << "\" y=\"" << format_fixed(height - 15, 2)
       << "\" font-size=\"14\" text-anchor=\"middle\">Ωt</text>\n";

    for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
        const auto& q = quantities[qi];
        const char* color = kPalette[qi % std::size(kPalette)];
        os << "<polyline class=\"series\" data-quantity=\"" << q << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (i) os << ' ';
            os << format_fixed(sx(records[i].omega_t), 2) << ','
               << format_fixed(sy(*numeric_column(records[i], q)), 2);
        }
        os << "\"/>\n";
        const double ly = top + 20.0 * static_cast<double>(qi + 1);
        os << "<line x1=\"" << format_fixed(left + plot_w + 15, 2) << "\" y1=\"" << format_fixed(ly - 4, 2)
           << "\" x2=\"" << format_fixed(left + plot_w + 40, 2) << "\" y2=\"" << format_fixed(ly - 4, 2)
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text class=\"legend\" x=\"" << format_fixed(left + plot_w + 45, 2) << "\" y=\""
           << format_fixed(ly, 2) << "\" font-size=\"12\">" << q << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_svg(std::span<const CorrelationRecord> records, const std::vector<std::string>& quantities,
              const std::string& path) {
    const auto doc = render_svg(records, quantities);
    auto out = open_output(path);
    out << doc;
    finish(out, path);
}

std::string manifest_document(const RunManifest& m) {
    json doc;
    doc["version"] = m.version;
    doc["config"] = settings_to_json(m.config);
    json artifacts = json::object();
    for (const auto& [kind, path] : m.artifacts) artifacts[kind] = path;
    doc["artifacts"] = std::move(artifacts);
    doc["wall_clock_seconds"] = m.wall_clock_seconds;
    return doc.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    auto out = open_output(path);
    out << manifest_document(manifest);
    finish(out, path);
}

}  // namespace tricorr::cli
