#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "esmam/evaluation.hpp"
#include "esmam/subgroup_set.hpp"

namespace esmam {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct DatasetSummary {
    std::string source;
    int n_records = 0;
    int n_attributes = 0;
    int n_items = 0;
    double pct_censored = 0.0;
    int rows_dropped = 0;
};

DatasetSummary summarize(const Dataset& ds, const std::string& source, int rows_dropped = 0);
nlohmann::json to_json(const DatasetSummary& s);

/// Subgroup-set file: schema_version, metadata (dataset summary, baseline,
/// alpha, params, seed) and one object per subgroup with its description as
/// an ordered array of {attribute, values} conditions.
nlohmann::json subgroup_set_to_json(const SubgroupSet& set, const Dataset& ds,
                                    const DatasetSummary& summary, const SearchParams& params);

/// Rebuilds a subgroup set against `ds`: extents and qualities are
/// recomputed, never trusted from the file. Unknown attributes or values
/// raise an error naming the offending location. `baseline`/`alpha`
/// override the file's metadata when provided.
SubgroupSet import_subgroup_set(const nlohmann::json& j, const Dataset& ds,
                                std::optional<BaselineMode> baseline = std::nullopt,
                                std::optional<double> alpha = std::nullopt);
SubgroupSet import_subgroup_set_file(const std::string& path, const Dataset& ds,
                                     std::optional<BaselineMode> baseline = std::nullopt,
                                     std::optional<double> alpha = std::nullopt);

/// Human-readable listing: one line per subgroup with coverage, quality and
/// p-value.
void write_subgroup_table(std::ostream& out, const SubgroupSet& set, const Dataset& ds);

/// KM curve rows for the baseline (whole data) and every member:
/// subgroup,time,at_risk,events,survival.
void write_km_curves(std::ostream& out, const SubgroupSet& set, const Dataset& ds,
                     char delimiter = ',');

nlohmann::json metrics_to_json(const MetricsReport& rep);

/// Delimiter-separated grid with row/column labels in the first column/row.
void write_similarity_matrix(std::ostream& out, const SimilarityMatrix& m, char delimiter = ',');

/// Member label used in exports: G000, G001, ...
std::string member_label(std::size_t index);

}  // namespace esmam
