#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "esmam/dataset.hpp"
#include "esmam/search.hpp"

namespace esmam {

struct DatasetConfig {
    std::string path;
    char delimiter = ',';
    std::string time_column = "time";
    std::string event_column = "event";
    std::vector<std::string> event_true_labels;
    std::vector<std::string> attribute_columns;

    ColumnSchema schema() const;
};

struct DiscretizeConfig {
    std::vector<std::string> columns;
    int bins = 5;
};

/// One mining campaign: dataset, preprocessing, search knobs, seeding and
/// output location.
struct RunConfig {
    DatasetConfig dataset;
    DiscretizeConfig discretize;
    SearchParams search;
    int repeats = 1;
    std::uint64_t seed_base = 0;
    std::string output_dir = "out";

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    nlohmann::json to_json() const;

    /// Published configurations: "pop" (population baseline, min_cov 0.1,
    /// l 5) and "cpm" (complement baseline, min_cov 0.05, l 10); both with
    /// alpha 0.05, 100 ants, convergence 5, stagnation 40, w 0.9.
    void apply_preset(const std::string& name);

    void validate() const;  // throws std::invalid_argument
};

}  // namespace esmam
