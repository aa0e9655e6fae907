#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esmam/search.hpp"

namespace esmam {

/// A kept subgroup with its baseline quality and p-value at acceptance time.
/// Extents are stored, not recomputed.
struct Member {
    Subgroup subgroup;
    double quality = 0.0;
    double p_value = 1.0;
};

/// The evolving result set: members in insertion order, every one with
/// p <= alpha against the run baseline.
struct SubgroupSet {
    std::vector<Member> members;
    double alpha = 0.05;
    BaselineMode baseline = BaselineMode::population;

    bool contains_description(const Description& d) const;
    IndexSet union_extent(const Dataset& ds) const;
    /// g(o): number of members covering each record.
    std::vector<int> cover_counts(const Dataset& ds) const;
};

/// Common generalization: the intersection of the two descriptions' item
/// sets, regrouped per attribute. Nothing when the intersection is empty.
std::optional<Description> root_description(const Description& a, const Description& b);

/// Union of the two descriptions' item sets; defined only when both
/// constrain exactly the same attributes.
std::optional<Description> merge_description(const Description& a, const Description& b);

/// a is-in b: same constrained attributes and every item of a appears in b
/// (b generalizes a).
bool is_in(const Description& a, const Description& b);

std::optional<Subgroup> root(const Subgroup& a, const Subgroup& b, const Dataset& ds);
std::optional<Subgroup> merge(const Subgroup& a, const Subgroup& b, const Dataset& ds);
bool is_in(const Subgroup& a, const Subgroup& b);

/// Recursive set updating. Rejects candidates below the quality bound,
/// drops candidates refining a model-similar member, replaces members the
/// candidate generalizes, and otherwise tries root/merge generalizations
/// before appending. Total; throws only if the recursion exceeds a depth of
/// n_items (a cycle, which the operator algebra rules out).
SubgroupSet update_set(const Subgroup& candidate, const SubgroupSet& set, const Dataset& ds);

struct RunReport {
    int colonies = 0;
    int discoveries = 0;  // colonies that returned a subgroup
    std::uint64_t seed = 0;
    bool covered_all = false;
    int final_stagnation = 0;
};

/// The full miner: colonies of ants until every record is covered or the
/// uncovered set stops changing for more than max_stag consecutive
/// colonies. Deterministic given (dataset, params, seed).
std::pair<SubgroupSet, RunReport> run_esmamds(const Dataset& ds, const SearchParams& params);

}  // namespace esmam
