#pragma once

#include <span>
#include <vector>

#include "esmam/dataset.hpp"
#include "esmam/index_set.hpp"

namespace esmam {

struct KMPoint {
    double time = 0.0;
    int at_risk = 0;
    int events = 0;
    double survival = 1.0;
};

/// Product-limit estimate of the survival function. One point per distinct
/// event time; times with only censorings just shrink later risk sets.
struct KMCurve {
    std::vector<KMPoint> points;
    int n = 0;

    /// S(t): 1 before the first event time, then the step value.
    double survival_at(double t) const;
};

KMCurve km_fit(std::span<const double> times, std::span<const bool> events);
KMCurve km_fit(const IndexSet& extent, const Dataset& ds);

struct LogRankResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample log-rank (Mantel-Haenszel) over the pooled distinct event
/// times, chi-square with 1 df. Overlapping groups are allowed: a record in
/// both extents contributes to both samples, which is how a subgroup is
/// compared against the whole population. Returns statistic 0 / p 1 when
/// the pooled sample has no events or zero variance.
LogRankResult logrank(const IndexSet& group_a, const IndexSet& group_b, const Dataset& ds);

LogRankResult logrank_samples(std::span<const double> times_a, std::span<const bool> events_a,
                              std::span<const double> times_b, std::span<const bool> events_b);

/// Upper tail of the chi-square distribution with 1 df: erfc(sqrt(x/2)).
/// std::erfc on this platform is accurate to a few ulp (relative error well
/// below 1e-12), which the test suite checks against an independent
/// incomplete-gamma evaluation.
double chi2_upper_tail_1df(double x);

enum class BaselineMode { population, complement };

const char* to_string(BaselineMode mode);
BaselineMode baseline_from_string(const std::string& s);

/// Log-rank of the extent against its baseline: the whole record set in
/// population mode, the uncovered records in complement mode.
LogRankResult baseline_logrank(const IndexSet& extent, BaselineMode mode, const Dataset& ds);

struct QualityResult {
    double quality = 0.0;
    double p_value = 1.0;
};

/// Quality 1 - p of the baseline log-rank. By convention an empty extent has
/// quality 0 (p reported as 1), as does the full extent under the complement
/// baseline, so degenerate candidates always lose.
QualityResult quality_with_p(const IndexSet& extent, BaselineMode mode, const Dataset& ds);
double quality(const IndexSet& extent, BaselineMode mode, const Dataset& ds);
double quality(const Subgroup& g, BaselineMode mode, const Dataset& ds);

/// True iff the two extents' survival models differ at level alpha
/// (log-rank p <= alpha).
bool models_differ(const IndexSet& a, const IndexSet& b, double alpha, const Dataset& ds);

void write_km_curve_rows(std::ostream& out, const std::string& label, const KMCurve& curve,
                         char delimiter);

}  // namespace esmam
