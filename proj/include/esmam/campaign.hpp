#pragma once

#include <string>
#include <vector>

#include "esmam/config.hpp"
#include "esmam/io.hpp"

namespace esmam {

struct RunOutcome {
    std::uint64_t seed = 0;
    std::string directory;
    MetricsReport metrics;
    int n_subgroups = 0;
};

struct CampaignReport {
    std::vector<RunOutcome> runs;
    DatasetSummary dataset;
    std::string summary_csv_path;
};

/// Loads and preprocesses the dataset once, then executes `repeats`
/// independent runs with seeds seed_base, seed_base+1, ... Each run writes
/// subgroups.json, subgroups.txt, metrics.json and curves.csv into its own
/// run_### directory; the campaign root gets summary.csv (per-run metric
/// rows plus mean/std) and campaign.json (config echo, seed list, versions).
CampaignReport run_campaign(const RunConfig& config);

/// Loads the dataset per `config`, imports both subgroup files against it
/// and writes the three similarity matrices and both metrics reports into
/// `out_dir`.
void compare_sets(const RunConfig& config, const std::string& native_path,
                  const std::string& imported_path, const std::string& out_dir);

/// Applies the preprocessing steps (drop missing, discretize) and writes the
/// processed dataset plus a summary JSON.
DatasetSummary preprocess_to_file(const RunConfig& config, const std::string& out_csv,
                                  const std::string& out_summary);

/// Dataset loading + discretization as configured.
Dataset load_prepared_dataset(const RunConfig& config, LoadReport* report = nullptr,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace esmam
