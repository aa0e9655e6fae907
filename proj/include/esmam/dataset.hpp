#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "esmam/index_set.hpp"

namespace esmam {

/// One (attribute, value) pair, the atomic unit of descriptions. Values are
/// indices into the attribute's domain.
struct Item {
    int attribute = -1;
    int value = -1;
    bool operator==(const Item&) const = default;
    auto operator<=>(const Item&) const = default;
};

/// Dense item identifier: items are numbered attribute by attribute in
/// domain order, so per-item tables are flat arrays.
using ItemId = int;

struct Attribute {
    std::string name;
    std::vector<std::string> domain;  // category labels, in a fixed order
};

/// Immutable table of individuals: categorical attribute values, a survival
/// time and an event indicator per record. Construction validates every
/// record and precomputes the per-item record extents and the time-sorted
/// record order used by the statistics routines.
class Dataset {
public:
    Dataset(std::vector<Attribute> attributes,
            std::vector<std::vector<int>> values,  // [record][attribute] -> value index
            std::vector<double> times,
            std::vector<bool> events);

    int n_records() const { return static_cast<int>(times_.size()); }
    int n_attributes() const { return static_cast<int>(attributes_.size()); }
    int n_items() const { return static_cast<int>(item_extents_.size()); }

    const std::vector<Attribute>& attributes() const { return attributes_; }
    const Attribute& attribute(int a) const { return attributes_.at(a); }

    double time(int record) const { return times_[record]; }
    bool event(int record) const { return events_[record]; }
    int value(int record, int attr) const { return values_[record][attr]; }
    const std::string& value_label(int record, int attr) const {
        return attributes_[attr].domain[values_[record][attr]];
    }

    ItemId item_id(int attr, int value) const { return item_offsets_[attr] + value; }
    Item item(ItemId id) const;
    std::string item_label(ItemId id) const;  // "attr=value"

    /// Records whose value for the item's attribute equals the item's value.
    const IndexSet& item_extent(ItemId id) const { return item_extents_[id]; }

    const IndexSet& all_records() const { return all_records_; }

    /// Record indices ordered by ascending time (ties keep load order).
    const std::vector<int>& records_by_time() const { return by_time_; }

    /// Mean of the time column over all records.
    double mean_time() const { return mean_time_; }

    /// Records with time >= mean_time(): the "survives at least the average"
    /// side of the binary partition used by the entropy heuristic.
    const IndexSet& at_least_mean_records() const { return at_least_mean_; }

    double pct_censored() const;

    std::optional<int> attribute_index(std::string_view name) const;
    std::optional<int> value_index(int attr, std::string_view label) const;

private:
    std::vector<Attribute> attributes_;
    std::vector<std::vector<int>> values_;
    std::vector<double> times_;
    std::vector<bool> events_;
    std::vector<int> item_offsets_;
    std::vector<IndexSet> item_extents_;
    std::vector<int> by_time_;
    IndexSet all_records_;
    IndexSet at_least_mean_;
    double mean_time_ = 0.0;
};

/// Conjunction of per-attribute value-set constraints. At most one
/// constraint per attribute; each constraint is a non-empty subset of the
/// attribute's domain. The empty description covers every record.
class Description {
public:
    Description() = default;

    bool empty() const { return constraints_.empty(); }
    std::size_t size() const { return constraints_.size(); }

    bool constrains(int attr) const { return constraints_.contains(attr); }

    /// Adds `value` to the constraint on `attr`, creating it if absent.
    void constrain(int attr, int value) { constraints_[attr].insert(value); }

    void set_constraint(int attr, std::set<int> values);
    void remove_constraint(int attr) { constraints_.erase(attr); }

    const std::map<int, std::set<int>>& constraints() const { return constraints_; }

    std::set<int> attribute_set() const;

    /// The items listed in the description's conditions, ascending ItemId.
    std::vector<ItemId> items(const Dataset& ds) const;

    bool matches(int record, const Dataset& ds) const;

    /// Canonical text form: attributes in schema order, values in domain
    /// order, e.g. "celltype in {smallcell, adeno} & karno in {[10,40]}".
    std::string render(const Dataset& ds) const;

    friend auto operator<=>(const Description&, const Description&) = default;

private:
    std::map<int, std::set<int>> constraints_;
};

/// A description together with the records it covers.
struct Subgroup {
    Description description;
    IndexSet extent;

    /// gamma: all items present among covered records (superset of the
    /// description's own items whenever the extent is non-empty).
    std::vector<ItemId> gamma(const Dataset& ds) const;
};

/// Evaluates the description against every record.
Subgroup cover(const Description& d, const Dataset& ds);

struct ColumnSchema {
    std::string time_column;
    std::string event_column;
    std::vector<std::string> attribute_columns;  // empty: every other column
    std::vector<std::string> event_true_labels;  // empty: "1"->true, "0"->false, else error
    char delimiter = ',';
};

struct LoadReport {
    int rows_read = 0;
    int rows_dropped = 0;
};

/// Parses delimiter-separated text with a header row. Rows with a missing
/// value (empty cell, "NA" or "?") in any used column are dropped and
/// counted. Throws std::runtime_error naming the offending row/column on
/// malformed input.
Dataset load_dataset(std::istream& in, const ColumnSchema& schema, LoadReport* report = nullptr);
Dataset load_dataset_file(const std::string& path, const ColumnSchema& schema,
                          LoadReport* report = nullptr);

/// Replaces each listed column by interval categories with edges at
/// empirical quantiles. Duplicate edges collapse, so an attribute may end up
/// with fewer than `bins` categories; a boundary value falls in the lower
/// bin. Labels are "[lo,hi]" with shortest round-trip number formatting.
Dataset discretize_equal_frequency(const Dataset& ds, const std::vector<std::string>& columns,
                                   int bins = 5, std::vector<std::string>* warnings = nullptr);

/// Shortest round-trip decimal form of x ("74", "0.05", "87.3").
std::string format_number(double x);

/// Splits one delimiter-separated line; supports double-quoted fields with
/// "" escapes.
std::vector<std::string> split_delimited(const std::string& line, char delimiter);

/// Quotes the field if it contains the delimiter, a quote or a newline.
std::string csv_escape(const std::string& field, char delimiter);

}  // namespace esmam
