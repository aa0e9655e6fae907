#include "esmam/config.hpp"

#include <fstream>
#include <stdexcept>

namespace esmam {

using nlohmann::json;

ColumnSchema DatasetConfig::schema() const {
    ColumnSchema s;
    s.time_column = time_column;
    s.event_column = event_column;
    s.attribute_columns = attribute_columns;
    s.event_true_labels = event_true_labels;
    s.delimiter = delimiter;
    return s;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    if (j.contains("preset")) c.apply_preset(j["preset"].get<std::string>());

    if (j.contains("dataset")) {
        const json& d = j["dataset"];
        c.dataset.path = d.value("path", "");
        const std::string delim = d.value("delimiter", ",");
        if (delim == "\\t" || delim == "tab") c.dataset.delimiter = '\t';
        else if (delim.size() == 1) c.dataset.delimiter = delim[0];
        else throw std::invalid_argument("config: delimiter must be one character or 'tab'");
        c.dataset.time_column = d.value("time_column", "time");
        c.dataset.event_column = d.value("event_column", "event");
        c.dataset.event_true_labels =
            d.value("event_true_labels", std::vector<std::string>{});
        c.dataset.attribute_columns =
            d.value("attribute_columns", std::vector<std::string>{});
    }
    if (j.contains("discretize")) {
        const json& d = j["discretize"];
        c.discretize.columns = d.value("columns", std::vector<std::string>{});
        c.discretize.bins = d.value("bins", 5);
    }
    if (j.contains("search")) {
        const json& s = j["search"];
        c.search.n_ants = s.value("n_ants", c.search.n_ants);
        c.search.n_converg = s.value("n_converg", c.search.n_converg);
        c.search.min_cov = s.value("min_cov", c.search.min_cov);
        c.search.max_stag = s.value("max_stag", c.search.max_stag);
        c.search.alpha = s.value("alpha", c.search.alpha);
        c.search.w = s.value("w", c.search.w);
        c.search.l = s.value("l", c.search.l);
        if (s.contains("baseline"))
            c.search.baseline = baseline_from_string(s["baseline"].get<std::string>());
    }
    c.repeats = j.value("repeats", 1);
    c.seed_base = j.value("seed", std::uint64_t{0});
    c.output_dir = j.value("output_dir", "out");
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    const std::string delim =
        dataset.delimiter == '\t' ? std::string("tab") : std::string(1, dataset.delimiter);
    return json{
        {"dataset", json{{"path", dataset.path},
                         {"delimiter", delim},
                         {"time_column", dataset.time_column},
                         {"event_column", dataset.event_column},
                         {"event_true_labels", dataset.event_true_labels},
                         {"attribute_columns", dataset.attribute_columns}}},
        {"discretize", json{{"columns", discretize.columns}, {"bins", discretize.bins}}},
        {"search", json{{"n_ants", search.n_ants},
                        {"n_converg", search.n_converg},
                        {"min_cov", search.min_cov},
                        {"max_stag", search.max_stag},
                        {"alpha", search.alpha},
                        {"w", search.w},
                        {"l", search.l},
                        {"baseline", to_string(search.baseline)}}},
        {"repeats", repeats},
        {"seed", seed_base},
        {"output_dir", output_dir}};
}

void RunConfig::apply_preset(const std::string& name) {
    search.alpha = 0.05;
    search.n_ants = 100;
    search.n_converg = 5;
    search.max_stag = 40;
    search.w = 0.9;
    if (name == "pop") {
        search.baseline = BaselineMode::population;
        search.min_cov = 0.1;
        search.l = 5;
    } else if (name == "cpm") {
        search.baseline = BaselineMode::complement;
        search.min_cov = 0.05;
        search.l = 10;
    } else {
        throw std::invalid_argument("config: unknown preset '" + name + "' (expected pop or cpm)");
    }
}

void RunConfig::validate() const {
    if (dataset.path.empty()) throw std::invalid_argument("config: dataset.path is required");
    if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
    if (discretize.bins < 2) throw std::invalid_argument("config: discretize.bins must be >= 2");
    search.validate();
}

}  // namespace esmam
