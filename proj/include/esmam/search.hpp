#pragma once

#include <optional>
#include <span>
#include <vector>

#include "esmam/dataset.hpp"
#include "esmam/rng.hpp"
#include "esmam/stats.hpp"

namespace esmam {

/// Per-item pheromone, kept normalized to total mass 1; normalization after
/// each reinforcement plays the role of evaporation.
class PheromoneTable {
public:
    explicit PheromoneTable(int n_items);

    double operator[](ItemId id) const { return tau_[id]; }
    std::span<const double> values() const { return tau_; }
    double sum() const;

    /// tau(I) *= 1 + quality for each reinforced item, then renormalize.
    void reinforce(std::span<const ItemId> items, double quality);

private:
    std::vector<double> tau_;
};

struct SearchParams {
    int n_ants = 100;
    int n_converg = 5;
    double min_cov = 0.1;  // fraction of the record count
    int max_stag = 40;
    double alpha = 0.05;
    BaselineMode baseline = BaselineMode::population;
    double w = 0.9;  // weighted-covering base
    int l = 5;       // usage count at which the logistic attenuation halves
    std::uint64_t rng_seed = 0;

    void validate() const;  // throws std::invalid_argument
};

/// Per-item heuristic values for one colony: entropy signal (eta_h), usage
/// attenuation (eta_l), weighted-covering novelty (eta_w) and their product.
struct HeuristicState {
    std::vector<double> eta_h;
    std::vector<double> eta_l;
    std::vector<double> eta_w;
    std::vector<double> eta;
};

/// Computes the colony heuristics.
///   - eta_h: normalized information gain of each item about the binary
///     partition of `uncovered` records at the dataset's mean survival time;
///     items with no support in `uncovered` score 0.
///   - eta_l(I) = 1 - 1/(1+e^-(c(I)-L)) from `usage_counts`, the number of
///     times each item appeared in a colony's returned description.
///   - eta_w(I): mean of W^g(o) over the item's full-dataset extent, where
///     g(o) = `cover_counts[o]` is how many kept subgroups cover o.
HeuristicState init_heuristics(const Dataset& ds, const IndexSet& uncovered,
                               std::span<const int> usage_counts,
                               std::span<const int> cover_counts, double w, int l);

/// Minimum absolute coverage: ceil(min_cov * n), guarding against upward
/// floating-point noise at integer boundaries.
int min_coverage_threshold(double min_cov, int n_records);

/// Selection probabilities for extending `partial`: over the items present
/// in the covered records, proportional to eta*tau, zero for items on
/// already-constrained attributes. Probabilities sum to 1 unless every
/// candidate has zero mass.
std::vector<std::pair<ItemId, double>> transition_probabilities(const Description& partial,
                                                                const IndexSet& partial_extent,
                                                                const HeuristicState& heur,
                                                                const PheromoneTable& tau,
                                                                const Dataset& ds);

/// One ant: samples items one at a time, keeping coverage at or above the
/// threshold. A sampled item that would cross the threshold ends the walk;
/// if that happens on the first step the result is empty.
Description build_description(const Dataset& ds, const HeuristicState& heur,
                              const PheromoneTable& tau, int min_coverage, Rng& rng);

/// Greedy generalization: repeatedly drops the condition whose removal
/// improves quality the most (ties to the lowest attribute index), stopping
/// when no removal strictly improves quality or one condition remains.
Description prune_description(const Description& d, BaselineMode mode, const Dataset& ds);

struct Discovery {
    Subgroup subgroup;
    double quality = 0.0;
    double p_value = 1.0;
};

/// One full colony. Runs up to n_ants ants (build, prune, pheromone update,
/// best tracking by strictly greater quality) and stops early after
/// n_converg consecutive ants with identical description item sets. Returns
/// nothing when no ant produced a non-empty description with quality > 0.
std::optional<Discovery> subgroup_search(const Dataset& ds, const HeuristicState& heur,
                                         PheromoneTable& tau, const SearchParams& params,
                                         Rng& rng);

}  // namespace esmam
