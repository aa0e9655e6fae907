#include "esmam/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace esmam {

namespace {

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "?";
}

}  // namespace

Dataset::Dataset(std::vector<Attribute> attributes, std::vector<std::vector<int>> values,
                 std::vector<double> times, std::vector<bool> events)
    : attributes_(std::move(attributes)),
      values_(std::move(values)),
      times_(std::move(times)),
      events_(std::move(events)) {
    const int n = static_cast<int>(times_.size());
    if (n == 0) throw std::runtime_error("dataset: at least one record is required");
    if (static_cast<int>(events_.size()) != n || static_cast<int>(values_.size()) != n)
        throw std::runtime_error("dataset: record column lengths differ");

    for (std::size_t a = 0; a < attributes_.size(); ++a) {
        if (attributes_[a].domain.empty())
            throw std::runtime_error("dataset: attribute '" + attributes_[a].name +
                                     "' has an empty domain");
        std::set<std::string> seen(attributes_[a].domain.begin(), attributes_[a].domain.end());
        if (seen.size() != attributes_[a].domain.size())
            throw std::runtime_error("dataset: attribute '" + attributes_[a].name +
                                     "' has duplicate domain labels");
    }

    item_offsets_.resize(attributes_.size() + 1, 0);
    for (std::size_t a = 0; a < attributes_.size(); ++a)
        item_offsets_[a + 1] = item_offsets_[a] + static_cast<int>(attributes_[a].domain.size());

    item_extents_.assign(item_offsets_.back(), IndexSet(n));
    for (int r = 0; r < n; ++r) {
        if (!(times_[r] >= 0.0) || !std::isfinite(times_[r]))
            throw std::runtime_error("dataset: record " + std::to_string(r) +
                                     " has a negative or non-finite time");
        if (values_[r].size() != attributes_.size())
            throw std::runtime_error("dataset: record " + std::to_string(r) +
                                     " does not have one value per attribute");
        for (std::size_t a = 0; a < attributes_.size(); ++a) {
            const int v = values_[r][a];
            if (v < 0 || v >= static_cast<int>(attributes_[a].domain.size()))
                throw std::runtime_error("dataset: record " + std::to_string(r) +
                                         " has an out-of-domain value for attribute '" +
                                         attributes_[a].name + "'");
            item_extents_[item_offsets_[a] + v].insert(r);
        }
    }

    by_time_.resize(n);
    std::iota(by_time_.begin(), by_time_.end(), 0);
    std::stable_sort(by_time_.begin(), by_time_.end(),
                     [&](int a, int b) { return times_[a] < times_[b]; });

    all_records_ = IndexSet::full(n);
    mean_time_ = std::accumulate(times_.begin(), times_.end(), 0.0) / n;
    at_least_mean_ = IndexSet(n);
    for (int r = 0; r < n; ++r)
        if (times_[r] >= mean_time_) at_least_mean_.insert(r);
}

Item Dataset::item(ItemId id) const {
    for (int a = 0; a < n_attributes(); ++a)
        if (id < item_offsets_[a + 1]) return Item{a, id - item_offsets_[a]};
    throw std::out_of_range("dataset: item id out of range");
}

std::string Dataset::item_label(ItemId id) const {
    const Item it = item(id);
    return attributes_[it.attribute].name + "=" + attributes_[it.attribute].domain[it.value];
}

double Dataset::pct_censored() const {
    int censored = 0;
    for (bool e : events_)
        if (!e) ++censored;
    return 100.0 * censored / n_records();
}

std::optional<int> Dataset::attribute_index(std::string_view name) const {
    for (int a = 0; a < n_attributes(); ++a)
        if (attributes_[a].name == name) return a;
    return std::nullopt;
}

std::optional<int> Dataset::value_index(int attr, std::string_view label) const {
    const auto& dom = attributes_.at(attr).domain;
    for (int v = 0; v < static_cast<int>(dom.size()); ++v)
        if (dom[v] == label) return v;
    return std::nullopt;
}

void Description::set_constraint(int attr, std::set<int> values) {
    if (values.empty()) throw std::invalid_argument("description: constraint set must be non-empty");
    constraints_[attr] = std::move(values);
}

std::set<int> Description::attribute_set() const {
    std::set<int> attrs;
    for (const auto& [a, _] : constraints_) attrs.insert(a);
    return attrs;
}

std::vector<ItemId> Description::items(const Dataset& ds) const {
    std::vector<ItemId> out;
    for (const auto& [a, vals] : constraints_)
        for (int v : vals) out.push_back(ds.item_id(a, v));
    return out;  // map/set iteration keeps this ascending
}

bool Description::matches(int record, const Dataset& ds) const {
    for (const auto& [a, vals] : constraints_)
        if (!vals.contains(ds.value(record, a))) return false;
    return true;
}

std::string Description::render(const Dataset& ds) const {
    if (constraints_.empty()) return "<all>";
    std::string out;
    for (const auto& [a, vals] : constraints_) {
        if (!out.empty()) out += " & ";
        out += ds.attribute(a).name;
        out += " in {";
        bool first = true;
        for (int v : vals) {
            if (!first) out += ", ";
            first = false;
            out += ds.attribute(a).domain[v];
        }
        out += "}";
    }
    return out;
}

std::vector<ItemId> Subgroup::gamma(const Dataset& ds) const {
    std::vector<ItemId> out;
    for (ItemId id = 0; id < ds.n_items(); ++id)
        if (ds.item_extent(id).intersects(extent)) out.push_back(id);
    return out;
}

Subgroup cover(const Description& d, const Dataset& ds) {
    IndexSet extent = IndexSet::full(ds.n_records());
    for (const auto& [a, vals] : d.constraints()) {
        IndexSet attr_extent(ds.n_records());
        for (int v : vals) attr_extent |= ds.item_extent(ds.item_id(a, v));
        extent &= attr_extent;
    }
    return Subgroup{d, std::move(extent)};
}

std::vector<std::string> split_delimited(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& field, char delimiter) {
    if (field.find(delimiter) == std::string::npos && field.find('"') == std::string::npos &&
        field.find('\n') == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, ptr);
}

Dataset load_dataset(std::istream& in, const ColumnSchema& schema, LoadReport* report) {
    std::string header_line;
    if (!std::getline(in, header_line))
        throw std::runtime_error("load: input is empty (missing header row)");
    if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();

    const std::vector<std::string> header = split_delimited(header_line, schema.delimiter);
    auto column_of = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw std::runtime_error("load: column '" + name + "' not found in header");
    };

    const int time_col = column_of(schema.time_column);
    const int event_col = column_of(schema.event_column);

    std::vector<std::string> attr_names = schema.attribute_columns;
    if (attr_names.empty()) {
        for (const auto& h : header)
            if (h != schema.time_column && h != schema.event_column) attr_names.push_back(h);
    }
    if (attr_names.empty()) throw std::runtime_error("load: no attribute columns");

    std::vector<int> attr_cols;
    for (const auto& name : attr_names) attr_cols.push_back(column_of(name));

    const std::set<std::string> true_labels(schema.event_true_labels.begin(),
                                            schema.event_true_labels.end());

    std::vector<Attribute> attributes;
    for (const auto& name : attr_names) attributes.push_back({name, {}});
    std::vector<std::map<std::string, int>> value_of(attr_names.size());

    std::vector<std::vector<int>> values;
    std::vector<double> times;
    std::vector<bool> events;

    LoadReport rep;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++rep.rows_read;

        const std::vector<std::string> fields = split_delimited(line, schema.delimiter);
        if (fields.size() != header.size())
            throw std::runtime_error("load: row " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));

        bool missing = is_missing(fields[time_col]) || is_missing(fields[event_col]);
        for (int c : attr_cols) missing = missing || is_missing(fields[c]);
        if (missing) {
            ++rep.rows_dropped;
            continue;
        }

        const auto t = parse_double(fields[time_col]);
        if (!t || *t < 0.0)
            throw std::runtime_error("load: row " + std::to_string(line_no) + ", column '" +
                                     schema.time_column + "': not a non-negative number: '" +
                                     fields[time_col] + "'");

        const std::string& ev = fields[event_col];
        bool event;
        if (!true_labels.empty()) {
            event = true_labels.contains(ev);
        } else if (ev == "1") {
            event = true;
        } else if (ev == "0") {
            event = false;
        } else {
            throw std::runtime_error("load: row " + std::to_string(line_no) + ", column '" +
                                     schema.event_column + "': event value '" + ev +
                                     "' is not 0/1 and no truthy labels were configured");
        }

        std::vector<int> row(attr_cols.size());
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const std::string& label = fields[attr_cols[a]];
            auto [it, inserted] =
                value_of[a].try_emplace(label, static_cast<int>(attributes[a].domain.size()));
            if (inserted) attributes[a].domain.push_back(label);
            row[a] = it->second;
        }
        values.push_back(std::move(row));
        times.push_back(*t);
        events.push_back(event);
    }

    if (times.empty())
        throw std::runtime_error("load: no usable records (" + std::to_string(rep.rows_dropped) +
                                 " dropped for missing values)");
    if (report) *report = rep;
    return Dataset(std::move(attributes), std::move(values), std::move(times), std::move(events));
}

Dataset load_dataset_file(const std::string& path, const ColumnSchema& schema,
                          LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load: cannot open '" + path + "'");
    return load_dataset(in, schema, report);
}

Dataset discretize_equal_frequency(const Dataset& ds, const std::vector<std::string>& columns,
                                   int bins, std::vector<std::string>* warnings) {
    if (bins < 2) throw std::invalid_argument("discretize: bins must be >= 2");

    std::vector<Attribute> attributes = ds.attributes();
    std::vector<std::vector<int>> values(ds.n_records());
    for (int r = 0; r < ds.n_records(); ++r) {
        values[r].resize(ds.n_attributes());
        for (int a = 0; a < ds.n_attributes(); ++a) values[r][a] = ds.value(r, a);
    }

    for (const auto& column : columns) {
        const auto attr = ds.attribute_index(column);
        if (!attr) throw std::runtime_error("discretize: unknown column '" + column + "'");
        const int a = *attr;

        std::vector<double> raw(ds.n_records());
        for (int r = 0; r < ds.n_records(); ++r) {
            const auto v = parse_double(ds.value_label(r, a));
            if (!v)
                throw std::runtime_error("discretize: column '" + column + "', record " +
                                         std::to_string(r) + ": non-numeric value '" +
                                         ds.value_label(r, a) + "'");
            raw[r] = *v;
        }

        std::vector<double> sorted = raw;
        std::sort(sorted.begin(), sorted.end());
        const int m = static_cast<int>(sorted.size());
        const double lo = sorted.front();
        const double hi = sorted.back();

        // Interior cut points at empirical quantiles i/bins; duplicates and
        // cuts equal to the maximum collapse away.
        std::vector<double> cuts;
        for (int i = 1; i < bins; ++i) {
            const int k = static_cast<int>((static_cast<long long>(i) * m + bins - 1) / bins) - 1;
            cuts.push_back(sorted[k]);
        }
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        while (!cuts.empty() && cuts.back() >= hi) cuts.pop_back();

        if (cuts.empty() && warnings)
            warnings->push_back("discretize: column '" + column + "' yields a single category");

        // Bin i spans (edge[i], edge[i+1]], with the first bin closed below.
        std::vector<double> edges;
        edges.push_back(lo);
        for (double c : cuts) edges.push_back(c);
        edges.push_back(hi);

        Attribute binned{column, {}};
        for (std::size_t b = 0; b + 1 < edges.size(); ++b)
            binned.domain.push_back("[" + format_number(edges[b]) + "," +
                                    format_number(edges[b + 1]) + "]");

        for (int r = 0; r < ds.n_records(); ++r) {
            int b = 0;
            while (b + 2 < static_cast<int>(edges.size()) && raw[r] > edges[b + 1]) ++b;
            values[r][a] = b;
        }
        attributes[a] = std::move(binned);
    }

    std::vector<double> times(ds.n_records());
    std::vector<bool> events(ds.n_records());
    for (int r = 0; r < ds.n_records(); ++r) {
        times[r] = ds.time(r);
        events[r] = ds.event(r);
    }
    return Dataset(std::move(attributes), std::move(values), std::move(times), std::move(events));
}

}  // namespace esmam
