#include "esmam/subgroup_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace esmam {

bool SubgroupSet::contains_description(const Description& d) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const Member& m) { return m.subgroup.description == d; });
}

IndexSet SubgroupSet::union_extent(const Dataset& ds) const {
    IndexSet u(ds.n_records());
    for (const auto& m : members) u |= m.subgroup.extent;
    return u;
}

std::vector<int> SubgroupSet::cover_counts(const Dataset& ds) const {
    std::vector<int> counts(ds.n_records(), 0);
    for (const auto& m : members)
        m.subgroup.extent.for_each([&](std::size_t rec) { ++counts[rec]; });
    return counts;
}

std::optional<Description> root_description(const Description& a, const Description& b) {
    Description out;
    for (const auto& [attr, vals_a] : a.constraints()) {
        const auto it = b.constraints().find(attr);
        if (it == b.constraints().end()) continue;
        std::set<int> common;
        std::set_intersection(vals_a.begin(), vals_a.end(), it->second.begin(), it->second.end(),
                              std::inserter(common, common.begin()));
        if (!common.empty()) out.set_constraint(attr, std::move(common));
    }
    if (out.empty()) return std::nullopt;
    return out;
}

std::optional<Description> merge_description(const Description& a, const Description& b) {
    if (a.attribute_set() != b.attribute_set()) return std::nullopt;
    if (a.empty()) return std::nullopt;
    Description out = a;
    for (const auto& [attr, vals_b] : b.constraints())
        for (int v : vals_b) out.constrain(attr, v);
    return out;
}

bool is_in(const Description& a, const Description& b) {
    if (a.attribute_set() != b.attribute_set()) return false;
    for (const auto& [attr, vals_a] : a.constraints()) {
        const auto& vals_b = b.constraints().at(attr);
        if (!std::includes(vals_b.begin(), vals_b.end(), vals_a.begin(), vals_a.end()))
            return false;
    }
    return true;
}

std::optional<Subgroup> root(const Subgroup& a, const Subgroup& b, const Dataset& ds) {
    const auto d = root_description(a.description, b.description);
    if (!d) return std::nullopt;
    return cover(*d, ds);
}

std::optional<Subgroup> merge(const Subgroup& a, const Subgroup& b, const Dataset& ds) {
    const auto d = merge_description(a.description, b.description);
    if (!d) return std::nullopt;
    return cover(*d, ds);
}

bool is_in(const Subgroup& a, const Subgroup& b) {
    return is_in(a.description, b.description);
}

namespace {

bool attribute_sets_disjoint(const Description& a, const Description& b) {
    for (const auto& [attr, _] : a.constraints())
        if (b.constrains(attr)) return false;
    return true;
}

SubgroupSet update_impl(const Subgroup& cand, const SubgroupSet& set, const Dataset& ds,
                        int depth) {
    if (depth > ds.n_items())
        throw std::runtime_error("update_set: recursion exceeded the item-count bound");

    const QualityResult cand_q = quality_with_p(cand.extent, set.baseline, ds);
    if (!(cand_q.p_value <= set.alpha)) return set;  // below the 1-alpha quality bound

    for (const Member& member : set.members) {
        const Subgroup& g = member.subgroup;
        const bool different_models = models_differ(cand.extent, g.extent, set.alpha, ds);
        if (different_models || attribute_sets_disjoint(cand.description, g.description))
            continue;  // previously unseen behaviour or a completely new characterisation

        if (is_in(cand.description, g.description)) return set;  // refinement of a kept member

        if (is_in(g.description, cand.description)) {
            // The candidate generalizes this member: try replacing it.
            SubgroupSet without = set;
            std::erase_if(without.members,
                          [&](const Member& m) { return m.subgroup.description == g.description; });
            SubgroupSet replaced = update_impl(cand, without, ds, depth + 1);
            if (replaced.contains_description(cand.description)) return replaced;
            return set;
        }

        const auto g_r = root(cand, g, ds);
        const auto g_m = merge(cand, g, ds);
        if (!g_r && !g_m) continue;

        // Insert the generalizations recursively. A root identical to the
        // candidate is skipped: re-inserting the candidate itself is what
        // this call is already doing and would never terminate.
        SubgroupSet next = set;
        if (g_r && !(g_r->description == cand.description))
            next = update_impl(*g_r, next, ds, depth + 1);
        if (g_m && !(g_m->description == cand.description))
            next = update_impl(*g_m, next, ds, depth + 1);

        const bool r_in = g_r && next.contains_description(g_r->description);
        const bool m_in = g_m && next.contains_description(g_m->description);
        if (!r_in && !m_in) continue;

        bool absorbed = false;
        if (r_in && !models_differ(g_r->extent, cand.extent, set.alpha, ds)) absorbed = true;
        if (m_in && !models_differ(g_m->extent, cand.extent, set.alpha, ds)) absorbed = true;
        if (absorbed) return next;
        continue;  // generalizations kept elsewhere model-differ from the candidate
    }

    SubgroupSet out = set;
    out.members.push_back(Member{cand, cand_q.quality, cand_q.p_value});
    return out;
}

}  // namespace

SubgroupSet update_set(const Subgroup& candidate, const SubgroupSet& set, const Dataset& ds) {
    return update_impl(candidate, set, ds, 0);
}

std::pair<SubgroupSet, RunReport> run_esmamds(const Dataset& ds, const SearchParams& params) {
    params.validate();

    SubgroupSet set;
    set.alpha = params.alpha;
    set.baseline = params.baseline;

    RunReport report;
    report.seed = params.rng_seed;

    Rng rng(params.rng_seed);
    std::vector<int> usage_counts(ds.n_items(), 0);
    IndexSet uncovered = IndexSet::full(ds.n_records());
    int stagnation = 0;

    while (!uncovered.empty() && stagnation <= params.max_stag) {
        const HeuristicState heur = init_heuristics(ds, uncovered, usage_counts,
                                                    set.cover_counts(ds), params.w, params.l);
        PheromoneTable tau(ds.n_items());  // fresh trail for every colony
        const auto discovery = subgroup_search(ds, heur, tau, params, rng);
        ++report.colonies;

        if (discovery) {
            ++report.discoveries;
            for (ItemId id : discovery->subgroup.description.items(ds)) ++usage_counts[id];
            set = update_set(discovery->subgroup, set, ds);
        }

        const IndexSet next_uncovered = set.union_extent(ds).complement();
        const long delta = static_cast<long>(uncovered.count()) -
                           static_cast<long>(next_uncovered.count());
        uncovered = next_uncovered;
        if (delta == 0) ++stagnation;
        else stagnation = 0;
    }

    report.covered_all = uncovered.empty();
    report.final_stagnation = stagnation;
    return {std::move(set), report};
}

}  // namespace esmam
