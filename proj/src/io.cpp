#include "esmam/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace esmam {

using nlohmann::json;

DatasetSummary summarize(const Dataset& ds, const std::string& source, int rows_dropped) {
    return {source, ds.n_records(), ds.n_attributes(), ds.n_items(), ds.pct_censored(),
            rows_dropped};
}

json to_json(const DatasetSummary& s) {
    return json{{"source", s.source},
                {"n_records", s.n_records},
                {"n_attributes", s.n_attributes},
                {"n_items", s.n_items},
                {"pct_censored", s.pct_censored},
                {"rows_dropped", s.rows_dropped}};
}

std::string member_label(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "G%03zu", index);
    return buf;
}

namespace {

json params_to_json(const SearchParams& p) {
    return json{{"n_ants", p.n_ants},     {"n_converg", p.n_converg}, {"min_cov", p.min_cov},
                {"max_stag", p.max_stag}, {"alpha", p.alpha},         {"w", p.w},
                {"l", p.l},               {"baseline", to_string(p.baseline)}};
}

json description_to_json(const Description& d, const Dataset& ds) {
    json conditions = json::array();
    for (const auto& [attr, vals] : d.constraints()) {
        json values = json::array();
        for (int v : vals) values.push_back(ds.attribute(attr).domain[v]);
        conditions.push_back(json{{"attribute", ds.attribute(attr).name}, {"values", values}});
    }
    return conditions;
}

Description description_from_json(const json& conditions, const Dataset& ds,
                                  const std::string& where) {
    if (!conditions.is_array())
        throw std::runtime_error("import: " + where + ": description must be an array");
    Description d;
    for (std::size_t c = 0; c < conditions.size(); ++c) {
        const json& cond = conditions[c];
        const std::string loc = where + ".description[" + std::to_string(c) + "]";
        if (!cond.is_object() || !cond.contains("attribute") || !cond.contains("values"))
            throw std::runtime_error("import: " + loc + ": need {attribute, values}");
        const std::string attr_name = cond["attribute"].get<std::string>();
        const auto attr = ds.attribute_index(attr_name);
        if (!attr)
            throw std::runtime_error("import: " + loc + ": unknown attribute '" + attr_name + "'");
        if (d.constrains(*attr))
            throw std::runtime_error("import: " + loc + ": attribute '" + attr_name +
                                     "' constrained twice");
        const json& values = cond["values"];
        if (!values.is_array() || values.empty())
            throw std::runtime_error("import: " + loc + ": values must be a non-empty array");
        for (const auto& vj : values) {
            const std::string label = vj.get<std::string>();
            const auto v = ds.value_index(*attr, label);
            if (!v)
                throw std::runtime_error("import: " + loc + ": unknown value '" + label +
                                         "' for attribute '" + attr_name + "'");
            d.constrain(*attr, *v);
        }
    }
    return d;
}

}  // namespace

json subgroup_set_to_json(const SubgroupSet& set, const Dataset& ds,
                          const DatasetSummary& summary, const SearchParams& params) {
    json subgroups = json::array();
    for (std::size_t i = 0; i < set.members.size(); ++i) {
        const Member& m = set.members[i];
        subgroups.push_back(json{{"id", member_label(i)},
                                 {"description", description_to_json(m.subgroup.description, ds)},
                                 {"coverage", m.subgroup.extent.count()},
                                 {"coverage_fraction",
                                  static_cast<double>(m.subgroup.extent.count()) / ds.n_records()},
                                 {"quality", m.quality},
                                 {"p_value", m.p_value}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"generator", std::string("esmamds ") + kToolVersion},
                {"metadata", json{{"dataset", to_json(summary)},
                                  {"baseline", to_string(set.baseline)},
                                  {"alpha", set.alpha},
                                  {"seed", params.rng_seed},
                                  {"params", params_to_json(params)}}},
                {"subgroups", subgroups}};
}

SubgroupSet import_subgroup_set(const json& j, const Dataset& ds,
                                std::optional<BaselineMode> baseline,
                                std::optional<double> alpha) {
    if (!j.is_object() || !j.contains("subgroups"))
        throw std::runtime_error("import: missing 'subgroups' array");

    SubgroupSet set;
    set.baseline = BaselineMode::population;
    set.alpha = 0.05;
    if (j.contains("metadata")) {
        const json& meta = j["metadata"];
        if (meta.contains("baseline"))
            set.baseline = baseline_from_string(meta["baseline"].get<std::string>());
        if (meta.contains("alpha")) set.alpha = meta["alpha"].get<double>();
    }
    if (baseline) set.baseline = *baseline;
    if (alpha) set.alpha = *alpha;

    const json& subgroups = j["subgroups"];
    if (!subgroups.is_array()) throw std::runtime_error("import: 'subgroups' must be an array");
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        const std::string where = "subgroups[" + std::to_string(i) + "]";
        const json& sj = subgroups[i];
        if (!sj.is_object() || !sj.contains("description"))
            throw std::runtime_error("import: " + where + ": missing description");
        Description d = description_from_json(sj["description"], ds, where);
        Subgroup g = cover(d, ds);
        const QualityResult q = quality_with_p(g.extent, set.baseline, ds);
        set.members.push_back(Member{std::move(g), q.quality, q.p_value});
    }
    return set;
}

SubgroupSet import_subgroup_set_file(const std::string& path, const Dataset& ds,
                                     std::optional<BaselineMode> baseline,
                                     std::optional<double> alpha) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("import: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("import: '" + path + "' is not valid JSON: " + e.what());
    }
    return import_subgroup_set(j, ds, baseline, alpha);
}

void write_subgroup_table(std::ostream& out, const SubgroupSet& set, const Dataset& ds) {
    out << "subgroups: " << set.members.size() << " (baseline " << to_string(set.baseline)
        << ", alpha " << format_number(set.alpha) << ")\n";
    for (std::size_t i = 0; i < set.members.size(); ++i) {
        const Member& m = set.members[i];
        const auto cov = m.subgroup.extent.count();
        out << member_label(i) << "  " << m.subgroup.description.render(ds) << "\n"
            << "      coverage " << cov << "/" << ds.n_records() << " ("
            << format_number(static_cast<double>(cov) / ds.n_records()) << ")"
            << "  quality " << format_number(m.quality) << "  p " << format_number(m.p_value)
            << "\n";
    }
}

void write_km_curves(std::ostream& out, const SubgroupSet& set, const Dataset& ds,
                     char delimiter) {
    out << "subgroup" << delimiter << "time" << delimiter << "at_risk" << delimiter << "events"
        << delimiter << "survival\n";
    write_km_curve_rows(out, "baseline", km_fit(ds.all_records(), ds), delimiter);
    for (std::size_t i = 0; i < set.members.size(); ++i)
        write_km_curve_rows(out, member_label(i), km_fit(set.members[i].subgroup.extent, ds),
                            delimiter);
}

json metrics_to_json(const MetricsReport& rep) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return json{{"schema_version", kSchemaVersion},
                {"n_subgroups", rep.n_subgroups},
                {"empty_set", rep.empty_set},
                {"epsilon", opt(rep.epsilon)},
                {"avg_length", opt(rep.avg_length)},
                {"sg_cov", opt(rep.sg_cov)},
                {"db_cov", opt(rep.db_cov)},
                {"rho_d", opt(rep.rho_d)},
                {"rho_c", opt(rep.rho_c)},
                {"rho_m", opt(rep.rho_m)},
                {"cr", opt(rep.cr)},
                {"g_hat", opt(rep.g_hat)},
                {"notes", rep.notes}};
}

void write_similarity_matrix(std::ostream& out, const SimilarityMatrix& m, char delimiter) {
    out << "similarity_" << to_string(m.measure);
    for (const auto& col : m.col_labels) out << delimiter << csv_escape(col, delimiter);
    out << "\n";
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        out << csv_escape(m.row_labels[i], delimiter);
        for (double v : m.values[i]) out << delimiter << format_number(v);
        out << "\n";
    }
}

}  // namespace esmam
