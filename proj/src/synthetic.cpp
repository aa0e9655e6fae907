#include "esmam/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "esmam/rng.hpp"

namespace esmam {

using nlohmann::json;

SyntheticSpec SyntheticSpec::from_json(const json& j) {
    SyntheticSpec spec;
    spec.n_records = j.at("records").get<int>();
    for (const auto& aj : j.at("attributes")) {
        Attribute a;
        a.name = aj.at("name").get<std::string>();
        if (aj.contains("values")) {
            for (const auto& v : aj["values"]) a.domain.push_back(v.get<std::string>());
        } else if (aj.contains("cardinality")) {
            const int k = aj["cardinality"].get<int>();
            for (int v = 0; v < k; ++v) a.domain.push_back("v" + std::to_string(v));
        } else {
            throw std::runtime_error("synthetic: attribute '" + a.name +
                                     "' needs 'values' or 'cardinality'");
        }
        spec.attributes.push_back(std::move(a));
    }
    spec.baseline_scale = j.value("baseline_scale", 10.0);
    spec.censoring_rate = j.value("censoring_rate", 0.0);
    spec.disjoint = j.value("disjoint", false);
    if (j.contains("planted")) {
        for (const auto& pj : j["planted"]) {
            PlantedPattern p;
            p.name = pj.value("name", "p" + std::to_string(spec.planted.size()));
            p.scale = pj.at("scale").get<double>();
            p.fraction = pj.value("fraction", 0.0);
            for (const auto& cond : pj.at("description")) {
                std::vector<std::string> values;
                for (const auto& v : cond.at("values")) values.push_back(v.get<std::string>());
                p.description.emplace_back(cond.at("attribute").get<std::string>(),
                                           std::move(values));
            }
            spec.planted.push_back(std::move(p));
        }
    }
    spec.validate();
    return spec;
}

namespace {

int attr_index_of(const SyntheticSpec& spec, const std::string& name) {
    for (std::size_t a = 0; a < spec.attributes.size(); ++a)
        if (spec.attributes[a].name == name) return static_cast<int>(a);
    return -1;
}

int value_index_of(const Attribute& attr, const std::string& label) {
    for (std::size_t v = 0; v < attr.domain.size(); ++v)
        if (attr.domain[v] == label) return static_cast<int>(v);
    return -1;
}

// Planted description resolved to indices.
struct ResolvedPattern {
    std::vector<std::pair<int, std::vector<int>>> conditions;
    double scale;
    int forced;
};

bool pattern_matches(const ResolvedPattern& p, const std::vector<int>& row) {
    for (const auto& [attr, vals] : p.conditions)
        if (std::find(vals.begin(), vals.end(), row[attr]) == vals.end()) return false;
    return true;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (n_records < 1) throw std::runtime_error("synthetic: records must be >= 1");
    if (attributes.empty()) throw std::runtime_error("synthetic: need at least one attribute");
    if (!(baseline_scale > 0.0)) throw std::runtime_error("synthetic: baseline_scale must be > 0");
    if (censoring_rate < 0.0 || censoring_rate >= 1.0)
        throw std::runtime_error("synthetic: censoring_rate must be in [0,1)");

    double total_fraction = 0.0;
    for (const auto& p : planted) {
        if (p.description.empty())
            throw std::runtime_error("synthetic: planted '" + p.name + "' has no conditions");
        if (!(p.scale > 0.0))
            throw std::runtime_error("synthetic: planted '" + p.name + "' scale must be > 0");
        if (p.fraction < 0.0 || p.fraction > 1.0)
            throw std::runtime_error("synthetic: planted '" + p.name + "' fraction out of [0,1]");
        total_fraction += p.fraction;
        std::vector<bool> seen(attributes.size(), false);
        for (const auto& [attr_name, values] : p.description) {
            const int a = attr_index_of(*this, attr_name);
            if (a < 0)
                throw std::runtime_error("synthetic: planted '" + p.name +
                                         "' references unknown attribute '" + attr_name + "'");
            if (seen[a])
                throw std::runtime_error("synthetic: planted '" + p.name +
                                         "' constrains attribute '" + attr_name + "' twice");
            seen[a] = true;
            if (values.empty())
                throw std::runtime_error("synthetic: planted '" + p.name +
                                         "' has an empty value set for '" + attr_name + "'");
            for (const auto& label : values)
                if (value_index_of(attributes[a], label) < 0)
                    throw std::runtime_error("synthetic: planted '" + p.name +
                                             "' references unknown value '" + label + "' of '" +
                                             attr_name + "'");
        }
    }
    if (total_fraction > 1.0)
        throw std::runtime_error("synthetic: planted fractions sum above 1");
}

SyntheticOutput generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);

    std::vector<ResolvedPattern> patterns;
    for (const auto& p : spec.planted) {
        ResolvedPattern rp;
        rp.scale = p.scale;
        rp.forced = static_cast<int>(p.fraction * spec.n_records);
        for (const auto& [attr_name, values] : p.description) {
            const int a = attr_index_of(spec, attr_name);
            std::vector<int> vals;
            for (const auto& label : values)
                vals.push_back(value_index_of(spec.attributes[a], label));
            rp.conditions.emplace_back(a, std::move(vals));
        }
        patterns.push_back(std::move(rp));
    }

    // Which pattern each record is forced into: pattern blocks in order,
    // then background.
    std::vector<int> forced_pattern(spec.n_records, -1);
    int next = 0;
    for (std::size_t k = 0; k < patterns.size(); ++k)
        for (int c = 0; c < patterns[k].forced && next < spec.n_records; ++c)
            forced_pattern[next++] = static_cast<int>(k);

    std::vector<std::vector<int>> rows(spec.n_records);
    std::vector<double> times(spec.n_records);
    std::vector<int> events(spec.n_records);
    std::vector<int> match_counts(patterns.size(), 0);

    for (int r = 0; r < spec.n_records; ++r) {
        std::vector<int>& row = rows[r];
        row.resize(spec.attributes.size());
        const int forced = forced_pattern[r];

        for (int attempt = 0;; ++attempt) {
            if (attempt >= 1000)
                throw std::runtime_error("synthetic: could not draw a record satisfying the "
                                         "disjointness constraint");
            for (std::size_t a = 0; a < spec.attributes.size(); ++a)
                row[a] = static_cast<int>(
                    rng.uniform_int(static_cast<std::uint64_t>(spec.attributes[a].domain.size())));
            if (forced >= 0)
                for (const auto& [a, vals] : patterns[forced].conditions)
                    row[a] = vals[rng.uniform_int(vals.size())];
            if (!spec.disjoint) break;
            int matches = 0;
            for (const auto& p : patterns)
                if (pattern_matches(p, row)) ++matches;
            if (matches <= 1) break;
        }

        double scale = spec.baseline_scale;
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            if (pattern_matches(patterns[k], row)) {
                scale = patterns[k].scale;  // first matching pattern decides
                ++match_counts[k];
                break;
            }
        }

        const double event_time = rng.exponential(scale);
        if (spec.censoring_rate > 0.0 && rng.uniform01() < spec.censoring_rate) {
            events[r] = 0;
            times[r] = event_time * rng.uniform01();
        } else {
            events[r] = 1;
            times[r] = event_time;
        }
    }

    SyntheticOutput out;
    std::ostringstream csv;
    for (const auto& a : spec.attributes) csv << a.name << ",";
    csv << "time,event\n";
    for (int r = 0; r < spec.n_records; ++r) {
        for (std::size_t a = 0; a < spec.attributes.size(); ++a)
            csv << csv_escape(spec.attributes[a].domain[rows[r][a]], ',') << ",";
        csv << format_number(times[r]) << "," << events[r] << "\n";
    }
    out.csv = csv.str();

    json planted = json::array();
    for (std::size_t k = 0; k < spec.planted.size(); ++k) {
        json desc = json::array();
        for (const auto& [attr, values] : spec.planted[k].description)
            desc.push_back(json{{"attribute", attr}, {"values", values}});
        planted.push_back(json{{"name", spec.planted[k].name},
                               {"description", desc},
                               {"scale", spec.planted[k].scale},
                               {"fraction", spec.planted[k].fraction},
                               {"forced_records", patterns[k].forced},
                               {"matching_records", match_counts[k]}});
    }
    out.ground_truth = json{{"schema_version", 1},
                            {"seed", seed},
                            {"records", spec.n_records},
                            {"baseline_scale", spec.baseline_scale},
                            {"censoring_rate", spec.censoring_rate},
                            {"disjoint", spec.disjoint},
                            {"planted", planted}};
    return out;
}

void write_synthetic(const SyntheticSpec& spec, std::uint64_t seed, const std::string& csv_path,
                     const std::string& truth_path) {
    const SyntheticOutput out = generate_synthetic(spec, seed);
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("synthetic: cannot write '" + csv_path + "'");
    csv << out.csv;
    std::ofstream truth(truth_path);
    if (!truth) throw std::runtime_error("synthetic: cannot write '" + truth_path + "'");
    truth << out.ground_truth.dump(2) << "\n";
}

}  // namespace esmam
