#include "esmam/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esmam {

PheromoneTable::PheromoneTable(int n_items) {
    if (n_items <= 0) throw std::invalid_argument("pheromone: need at least one item");
    tau_.assign(n_items, 1.0 / n_items);
}

double PheromoneTable::sum() const {
    double s = 0.0;
    for (double v : tau_) s += v;
    return s;
}

void PheromoneTable::reinforce(std::span<const ItemId> items, double quality) {
    for (ItemId id : items) tau_[id] *= 1.0 + quality;
    const double total = sum();
    for (double& v : tau_) v /= total;
}

void SearchParams::validate() const {
    if (n_ants < 1) throw std::invalid_argument("params: n_ants must be >= 1");
    if (n_converg < 1) throw std::invalid_argument("params: n_converg must be >= 1");
    if (!(min_cov > 0.0 && min_cov < 1.0))
        throw std::invalid_argument("params: min_cov must be in (0,1)");
    if (max_stag < 0) throw std::invalid_argument("params: max_stag must be >= 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("params: alpha must be in (0,1)");
    if (!(w > 0.0 && w <= 1.0)) throw std::invalid_argument("params: w must be in (0,1]");
    if (l < 0) throw std::invalid_argument("params: l must be >= 0");
}

int min_coverage_threshold(double min_cov, int n_records) {
    return static_cast<int>(std::ceil(min_cov * n_records - 1e-9));
}

HeuristicState init_heuristics(const Dataset& ds, const IndexSet& uncovered,
                               std::span<const int> usage_counts,
                               std::span<const int> cover_counts, double w, int l) {
    if (uncovered.empty()) throw std::invalid_argument("heuristics: uncovered set is empty");
    const int n_items = ds.n_items();
    if (static_cast<int>(usage_counts.size()) != n_items ||
        static_cast<int>(cover_counts.size()) != ds.n_records())
        throw std::invalid_argument("heuristics: count vector sizes do not match the dataset");

    HeuristicState h;
    h.eta_h.assign(n_items, 0.0);
    h.eta_l.assign(n_items, 0.0);
    h.eta_w.assign(n_items, 0.0);
    h.eta.assign(n_items, 0.0);

    const IndexSet& long_side = ds.at_least_mean_records();

    // eta_h: 1 - H(partition | item) over the uncovered records, normalized.
    double total = 0.0;
    for (ItemId id = 0; id < n_items; ++id) {
        const IndexSet& ext = ds.item_extent(id);
        const std::size_t support = ext.intersection_count(uncovered);
        if (support == 0) continue;  // score 0
        const std::size_t n_long = (ext & uncovered).intersection_count(long_side);
        const double p = static_cast<double>(n_long) / support;
        double entropy = 0.0;
        if (p > 0.0) entropy -= p * std::log2(p);
        if (p < 1.0) entropy -= (1.0 - p) * std::log2(1.0 - p);
        h.eta_h[id] = 1.0 - entropy;  // log2(2) - H
        total += h.eta_h[id];
    }
    if (total > 0.0)
        for (double& v : h.eta_h) v /= total;

    for (ItemId id = 0; id < n_items; ++id) {
        h.eta_l[id] = 1.0 - 1.0 / (1.0 + std::exp(-(static_cast<double>(usage_counts[id]) - l)));

        const IndexSet& ext = ds.item_extent(id);
        const std::size_t size = ext.count();
        if (size == 0) {
            h.eta_w[id] = 1.0;
        } else {
            double sum = 0.0;
            ext.for_each([&](std::size_t rec) { sum += std::pow(w, cover_counts[rec]); });
            h.eta_w[id] = sum / size;
        }
        h.eta[id] = h.eta_h[id] * h.eta_l[id] * h.eta_w[id];
    }
    return h;
}

std::vector<std::pair<ItemId, double>> transition_probabilities(const Description& partial,
                                                                const IndexSet& partial_extent,
                                                                const HeuristicState& heur,
                                                                const PheromoneTable& tau,
                                                                const Dataset& ds) {
    std::vector<std::pair<ItemId, double>> probs;
    double total = 0.0;
    for (ItemId id = 0; id < ds.n_items(); ++id) {
        if (!ds.item_extent(id).intersects(partial_extent)) continue;  // not in gamma
        const Item it = ds.item(id);
        const double mass = partial.constrains(it.attribute) ? 0.0 : heur.eta[id] * tau[id];
        probs.emplace_back(id, mass);
        total += mass;
    }
    if (total > 0.0)
        for (auto& [id, p] : probs) p /= total;
    return probs;
}

Description build_description(const Dataset& ds, const HeuristicState& heur,
                              const PheromoneTable& tau, int min_coverage, Rng& rng) {
    Description d;
    IndexSet extent = IndexSet::full(ds.n_records());
    while (static_cast<int>(d.size()) < ds.n_attributes()) {
        const auto probs = transition_probabilities(d, extent, heur, tau, ds);
        std::vector<double> weights(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) weights[i] = probs[i].second;
        const long pick = rng.weighted_choice(weights);
        if (pick < 0) break;  // every candidate has zero mass

        const ItemId id = probs[pick].first;
        const IndexSet next = extent & ds.item_extent(id);
        if (static_cast<int>(next.count()) < min_coverage) break;
        const Item it = ds.item(id);
        d.constrain(it.attribute, it.value);
        extent = next;
    }
    return d;
}

Description prune_description(const Description& d, BaselineMode mode, const Dataset& ds) {
    if (d.size() <= 1) return d;
    Description current = d;
    double current_quality = quality(cover(current, ds).extent, mode, ds);
    while (current.size() > 1) {
        double best_quality = current_quality;
        int best_attr = -1;
        for (const auto& [attr, _] : current.constraints()) {
            Description trimmed = current;
            trimmed.remove_constraint(attr);
            const double q = quality(cover(trimmed, ds).extent, mode, ds);
            if (q > best_quality) {  // strict: ties keep the lowest attribute seen first
                best_quality = q;
                best_attr = attr;
            }
        }
        if (best_attr < 0) break;
        current.remove_constraint(best_attr);
        current_quality = best_quality;
    }
    return current;
}

std::optional<Discovery> subgroup_search(const Dataset& ds, const HeuristicState& heur,
                                         PheromoneTable& tau, const SearchParams& params,
                                         Rng& rng) {
    const int min_coverage = min_coverage_threshold(params.min_cov, ds.n_records());

    Description best_desc;
    IndexSet best_extent;
    double best_quality = 0.0;
    double best_p = 1.0;

    std::vector<ItemId> prev_items;  // I(G-) of the previous ant; starts empty
    int converg = 0;

    for (int ant = 1; ant <= params.n_ants; ++ant) {
        Description d = build_description(ds, heur, tau, min_coverage, rng);
        d = prune_description(d, params.baseline, ds);
        Subgroup g = cover(d, ds);
        const std::vector<ItemId> items = d.items(ds);

        double q = 0.0, p = 1.0;
        if (!d.empty()) {
            const QualityResult qr = quality_with_p(g.extent, params.baseline, ds);
            q = qr.quality;
            p = qr.p_value;
        }

        tau.reinforce(items, q);

        if (q > best_quality) {
            best_desc = d;
            best_extent = g.extent;
            best_quality = q;
            best_p = p;
        }

        if (items == prev_items) ++converg;
        else converg = 0;
        if (converg >= params.n_converg) break;
        prev_items = items;
    }

    if (best_desc.empty()) return std::nullopt;
    return Discovery{Subgroup{std::move(best_desc), std::move(best_extent)}, best_quality, best_p};
}

}  // namespace esmam
