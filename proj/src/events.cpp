#include "tricorr/sweep.hpp"

#include <cmath>

namespace tricorr {

namespace {

constexpr double kStencilEps = 1e-12;

using Predicate = std::function<bool(double)>;

// Boundary between `outside` (predicate false) and `inside` (predicate true).
double bisect_boundary(const Predicate& pred, double outside, double inside, double tol) {
    while (std::abs(inside - outside) > tol) {
        const double mid = 0.5 * (inside + outside);
        if (pred(mid)) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

// Maximizes f on [lo, hi]; returns the abscissa.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Runs of consecutive samples satisfying `member`, with at least `min_len`
// samples. Endpoints refined when an evaluator is present.
std::vector<Interval> runs_where(std::span<const CorrelationRecord> records,
                                 const std::function<bool(const CorrelationRecord&)>& member,
                                 std::size_t min_len, const Evaluator* evaluator, double refine_tol) {
    std::vector<Interval> out;
    const std::size_t n = records.size();
    Predicate pred;
    if (evaluator) {
        pred = [&](double t) { return member(evaluator->record_at(t)); };
    }
    std::size_t i = 0;
    while (i < n) {
        if (!member(records[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && member(records[j + 1])) ++j;
        if (j - i + 1 >= min_len) {
            Interval iv{records[i].omega_t, records[j].omega_t};
            if (evaluator) {
                if (i > 0) iv.start = bisect_boundary(pred, records[i - 1].omega_t, iv.start, refine_tol);
                if (j + 1 < n) iv.end = bisect_boundary(pred, records[j + 1].omega_t, iv.end, refine_tol);
            }
            out.push_back(iv);
        }
        i = j + 1;
    }
    return out;
}

}  // namespace

std::vector<Interval> detect_dark_periods(std::span<const CorrelationRecord> records, double tol,
                                          const Evaluator* evaluator, double refine_tol) {
    return runs_where(
        records, [tol](const CorrelationRecord& r) { return r.nu <= tol; }, 2, evaluator,
        refine_tol);
}

FreezeReport detect_freezing(std::span<const CorrelationRecord> records, double mu2_at_zero,
                             double tol, const Evaluator* evaluator, double refine_tol) {
    FreezeReport report;
    // "Two grid steps" means three consecutive samples.
    report.freeze_intervals = runs_where(
        records,
        [mu2_at_zero, tol](const CorrelationRecord& r) { return std::abs(r.tau - mu2_at_zero) <= tol; },
        3, evaluator, refine_tol);
    if (report.freeze_intervals.empty()) return report;

    report.t_star = report.freeze_intervals.front().start;
    const auto maxima = local_maxima(
        records, [](const CorrelationRecord& r) { return r.mu2; }, evaluator, refine_tol);
    for (double t : maxima) {
        if (t > *report.t_star) {
            report.t_max_mu2 = t;
            break;
        }
    }
    return report;
}

std::vector<double> local_maxima(std::span<const CorrelationRecord> records, const RecordField& field,
                                 const Evaluator* evaluator, double refine_tol) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const double v = field(records[i]);
        if (v - field(records[i - 1]) > kStencilEps && v - field(records[i + 1]) > kStencilEps) {
            double t = records[i].omega_t;
            if (evaluator) {
                t = golden_section_max(
                    [&](double s) { return field(evaluator->record_at(s)); },
                    records[i - 1].omega_t, records[i + 1].omega_t, refine_tol);
            }
            out.push_back(t);
        }
    }
    return out;
}

std::vector<double> local_minima(std::span<const CorrelationRecord> records, const RecordField& field,
                                 bool include_plateaus, const Evaluator* evaluator,
                                 double refine_tol) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const double v = field(records[i]);
        const double dl = field(records[i - 1]) - v;
        const double dr = field(records[i + 1]) - v;
        const bool strict = dl > kStencilEps && dr > kStencilEps;
        const bool plateau = dl >= -kStencilEps && dr >= -kStencilEps;
        if (strict) {
            double t = records[i].omega_t;
            if (evaluator) {
                t = golden_section_max(
                    [&](double s) { return -field(evaluator->record_at(s)); },
                    records[i - 1].omega_t, records[i + 1].omega_t, refine_tol);
            }
            out.push_back(t);
        } else if (include_plateaus && plateau) {
            out.push_back(records[i].omega_t);
        }
    }
    return out;
}

std::vector<std::size_t> branch_switch_indices(std::span<const CorrelationRecord> records) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].tau_branch != records[i - 1].tau_branch ||
            records[i].mu2_branch != records[i - 1].mu2_branch) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<BranchSegment> branch_schedule(std::span<const CorrelationRecord> records) {
    std::vector<BranchSegment> out;
    for (const auto& r : records) {
        if (!out.empty() && out.back().tau_branch == r.tau_branch &&
            out.back().mu2_branch == r.mu2_branch) {
            out.back().end = r.omega_t;
        } else {
            out.push_back({r.omega_t, r.omega_t, r.tau_branch, r.mu2_branch});
        }
    }
    return out;
}

EventReport analyze_events(std::span<const CorrelationRecord> records, const Evaluator& evaluator) {
    EventReport report;
    if (records.empty()) return report;
    const auto& cfg = evaluator.config();
    const double refine = cfg.tol(tolerance::kRefine);
    report.mu2_at_zero = records.front().mu2;
    report.dark_periods =
        detect_dark_periods(records, cfg.tol(tolerance::kDark), &evaluator, refine);
    auto freeze = detect_freezing(records, report.mu2_at_zero, cfg.tol(tolerance::kFreeze),
                                  &evaluator, refine);
    report.freeze_intervals = std::move(freeze.freeze_intervals);
    report.t_star = freeze.t_star;
    report.t_max_mu2 = freeze.t_max_mu2;
    report.branch_schedule = branch_schedule(records);
    return report;
}

}  // namespace tricorr
