#include "esmam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace esmam {

double KMCurve::survival_at(double t) const {
    double s = 1.0;
    for (const auto& p : points) {
        if (p.time > t) break;
        s = p.survival;
    }
    return s;
}

KMCurve km_fit(std::span<const double> times, std::span<const bool> events) {
    if (times.empty() || times.size() != events.size())
        throw std::invalid_argument("km_fit: need equal-length non-empty samples");

    std::vector<int> order(times.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return times[a] < times[b]; });

    KMCurve curve;
    curve.n = static_cast<int>(times.size());
    int at_risk = curve.n;
    double s = 1.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double t = times[order[i]];
        int d = 0, leaving = 0;
        while (i < order.size() && times[order[i]] == t) {
            if (events[order[i]]) ++d;
            ++leaving;
            ++i;
        }
        if (d > 0) {
            s *= 1.0 - static_cast<double>(d) / at_risk;
            curve.points.push_back({t, at_risk, d, s});
        }
        at_risk -= leaving;
    }
    return curve;
}

KMCurve km_fit(const IndexSet& extent, const Dataset& ds) {
    std::vector<double> times;
    std::vector<bool> events;
    times.reserve(extent.count());
    // records_by_time keeps the gather pre-sorted; km_fit re-sorts cheaply.
    for (int r : ds.records_by_time()) {
        if (extent.contains(static_cast<std::size_t>(r))) {
            times.push_back(ds.time(r));
            events.push_back(ds.event(r));
        }
    }
    return km_fit(times, events);
}

double chi2_upper_tail_1df(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(x / 2.0));
}

namespace {

struct LogRankAccumulator {
    double oe = 0.0;   // sum of d_a - e_a
    double var = 0.0;  // sum of hypergeometric variances

    // d_a - d*r_a/r is accumulated as (d_a*r_b - d_b*r_a)/r and the variance
    // as d*r_a*r_b*(r-d) / (r^2*(r-1)); both expressions are built from
    // exact integer products, so swapping the groups negates oe bit-exactly
    // and leaves var identical, making the test exactly symmetric.
    void add(double d_a, double d_b, double r_a, double r_b) {
        const double d = d_a + d_b;
        const double r = r_a + r_b;
        if (d <= 0.0 || r <= 0.0) return;
        oe += (d_a * r_b - d_b * r_a) / r;
        if (r > 1.0) var += d * (r_a * r_b) * (r - d) / (r * r * (r - 1.0));
    }

    LogRankResult result() const {
        if (!(var > 0.0)) return {0.0, 1.0};
        const double stat = oe * oe / var;
        return {stat, chi2_upper_tail_1df(stat)};
    }
};

}  // namespace

LogRankResult logrank(const IndexSet& group_a, const IndexSet& group_b, const Dataset& ds) {
    if (group_a.empty() || group_b.empty())
        throw std::invalid_argument("logrank: both groups must be non-empty");

    double r_a = static_cast<double>(group_a.count());
    double r_b = static_cast<double>(group_b.count());
    LogRankAccumulator acc;

    const auto& order = ds.records_by_time();
    std::size_t i = 0;
    while (i < order.size() && (r_a > 0.0 || r_b > 0.0)) {
        const double t = ds.time(order[i]);
        int d_a = 0, d_b = 0, leave_a = 0, leave_b = 0;
        while (i < order.size() && ds.time(order[i]) == t) {
            const int rec = order[i];
            if (group_a.contains(static_cast<std::size_t>(rec))) {
                ++leave_a;
                if (ds.event(rec)) ++d_a;
            }
            if (group_b.contains(static_cast<std::size_t>(rec))) {
                ++leave_b;
                if (ds.event(rec)) ++d_b;
            }
            ++i;
        }
        acc.add(d_a, d_b, r_a, r_b);
        r_a -= leave_a;
        r_b -= leave_b;
    }
    return acc.result();
}

LogRankResult logrank_samples(std::span<const double> times_a, std::span<const bool> events_a,
                              std::span<const double> times_b, std::span<const bool> events_b) {
    if (times_a.empty() || times_b.empty())
        throw std::invalid_argument("logrank: both groups must be non-empty");
    if (times_a.size() != events_a.size() || times_b.size() != events_b.size())
        throw std::invalid_argument("logrank: time/event lengths differ");

    struct Obs {
        double time;
        bool event;
        bool in_a;
    };
    std::vector<Obs> obs;
    obs.reserve(times_a.size() + times_b.size());
    for (std::size_t i = 0; i < times_a.size(); ++i) obs.push_back({times_a[i], events_a[i], true});
    for (std::size_t i = 0; i < times_b.size(); ++i) obs.push_back({times_b[i], events_b[i], false});
    std::sort(obs.begin(), obs.end(), [](const Obs& x, const Obs& y) { return x.time < y.time; });

    double r_a = static_cast<double>(times_a.size());
    double r_b = static_cast<double>(times_b.size());
    LogRankAccumulator acc;
    std::size_t i = 0;
    while (i < obs.size()) {
        const double t = obs[i].time;
        int d_a = 0, d_b = 0, leave_a = 0, leave_b = 0;
        while (i < obs.size() && obs[i].time == t) {
            if (obs[i].in_a) {
                ++leave_a;
                if (obs[i].event) ++d_a;
            } else {
                ++leave_b;
                if (obs[i].event) ++d_b;
            }
            ++i;
        }
        acc.add(d_a, d_b, r_a, r_b);
        r_a -= leave_a;
        r_b -= leave_b;
    }
    return acc.result();
}

const char* to_string(BaselineMode mode) {
    return mode == BaselineMode::population ? "population" : "complement";
}

BaselineMode baseline_from_string(const std::string& s) {
    if (s == "population") return BaselineMode::population;
    if (s == "complement") return BaselineMode::complement;
    throw std::invalid_argument("baseline must be 'population' or 'complement', got '" + s + "'");
}

LogRankResult baseline_logrank(const IndexSet& extent, BaselineMode mode, const Dataset& ds) {
    if (mode == BaselineMode::population) return logrank(extent, ds.all_records(), ds);
    return logrank(extent, extent.complement(), ds);
}

QualityResult quality_with_p(const IndexSet& extent, BaselineMode mode, const Dataset& ds) {
    if (extent.empty()) return {0.0, 1.0};
    if (mode == BaselineMode::complement && extent.complement().empty()) return {0.0, 1.0};
    const LogRankResult lr = baseline_logrank(extent, mode, ds);
    return {1.0 - lr.p_value, lr.p_value};
}

double quality(const IndexSet& extent, BaselineMode mode, const Dataset& ds) {
    return quality_with_p(extent, mode, ds).quality;
}

double quality(const Subgroup& g, BaselineMode mode, const Dataset& ds) {
    return quality(g.extent, mode, ds);
}

bool models_differ(const IndexSet& a, const IndexSet& b, double alpha, const Dataset& ds) {
    return logrank(a, b, ds).p_value <= alpha;
}

void write_km_curve_rows(std::ostream& out, const std::string& label, const KMCurve& curve,
                         char delimiter) {
    for (const auto& p : curve.points) {
        out << csv_escape(label, delimiter) << delimiter << format_number(p.time) << delimiter
            << p.at_risk << delimiter << p.events << delimiter << format_number(p.survival)
            << "\n";
    }
}

}  // namespace esmam
