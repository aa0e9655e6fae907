#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "esmam/dataset.hpp"

namespace esmam {

/// A planted subgroup: records matching the description draw survival times
/// from an exponential with `scale` instead of the background scale, and at
/// least floor(fraction * records) records are forced to match.
struct PlantedPattern {
    std::string name;
    std::vector<std::pair<std::string, std::vector<std::string>>> description;  // attr -> values
    double scale = 1.0;
    double fraction = 0.0;
};

struct SyntheticSpec {
    int n_records = 0;
    std::vector<Attribute> attributes;
    double baseline_scale = 10.0;
    double censoring_rate = 0.0;
    bool disjoint = false;  // resample records that would match two patterns
    std::vector<PlantedPattern> planted;

    static SyntheticSpec from_json(const nlohmann::json& j);
    void validate() const;  // throws on unsatisfiable planted descriptions
};

struct SyntheticOutput {
    std::string csv;            // dataset with header: attributes..., time, event
    nlohmann::json ground_truth;
};

/// Deterministic generation: forced-pattern blocks first (pattern k claims
/// floor(fraction_k * n) records), then background records with uniform
/// attribute draws. A record's survival scale is decided by the first
/// planted description it matches. Censored records get event 0 and a time
/// drawn uniformly below the event time.
SyntheticOutput generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

void write_synthetic(const SyntheticSpec& spec, std::uint64_t seed, const std::string& csv_path,
                     const std::string& truth_path);

}  // namespace esmam
