#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esmam/subgroup_set.hpp"

namespace esmam {

/// Overlap of the descriptions' item sets relative to the smaller one.
/// Throws when either description is empty.
double sim_description(const Subgroup& a, const Subgroup& b, const Dataset& ds);

/// Overlap of the extents relative to the smaller one. Throws when either
/// extent is empty.
double sim_coverage(const Subgroup& a, const Subgroup& b);

/// True when the two survival models are statistically similar
/// (log-rank p > alpha).
bool sim_model(const Subgroup& a, const Subgroup& b, double alpha, const Dataset& ds);

struct MetricsReport {
    int n_subgroups = 0;
    bool empty_set = true;
    std::optional<double> epsilon;     // fraction with p <= alpha vs baseline
    std::optional<double> avg_length;  // mean constrained-attribute count
    std::optional<double> sg_cov;      // mean extent fraction
    std::optional<double> db_cov;      // union extent fraction
    std::optional<double> rho_d;       // mean pairwise sim_description
    std::optional<double> rho_c;       // mean pairwise sim_coverage
    std::optional<double> rho_m;       // fraction of similar-model pairs
    std::optional<double> cr;          // cover redundancy
    std::optional<double> g_hat;       // expected cover count per record
    std::vector<std::string> notes;
};

/// All set-level metrics. Pairwise metrics are absent below two members;
/// everything but n_subgroups is absent for an empty set.
MetricsReport compute_metrics(const SubgroupSet& set, const Dataset& ds, double alpha);

enum class SimilarityMeasure { description, coverage, model };

SimilarityMeasure similarity_measure_from_string(const std::string& s);
const char* to_string(SimilarityMeasure m);

struct SimilarityMatrix {
    SimilarityMeasure measure = SimilarityMeasure::description;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values;  // [row][col]; model cells are 0/1
};

/// Full |A| x |B| grid of the chosen measure. Throws when either set is
/// empty.
SimilarityMatrix cross_similarity(const SubgroupSet& set_a, const SubgroupSet& set_b,
                                  SimilarityMeasure measure, double alpha, const Dataset& ds);

}  // namespace esmam
