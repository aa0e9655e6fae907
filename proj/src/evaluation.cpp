#include "esmam/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esmam {

double sim_description(const Subgroup& a, const Subgroup& b, const Dataset& ds) {
    const std::vector<ItemId> ia = a.description.items(ds);
    const std::vector<ItemId> ib = b.description.items(ds);
    if (ia.empty() || ib.empty())
        throw std::invalid_argument("sim_description: empty description");
    std::vector<ItemId> common;
    std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(common));
    return static_cast<double>(common.size()) / std::min(ia.size(), ib.size());
}

double sim_coverage(const Subgroup& a, const Subgroup& b) {
    const std::size_t na = a.extent.count();
    const std::size_t nb = b.extent.count();
    if (na == 0 || nb == 0) throw std::invalid_argument("sim_coverage: empty extent");
    return static_cast<double>(a.extent.intersection_count(b.extent)) / std::min(na, nb);
}

bool sim_model(const Subgroup& a, const Subgroup& b, double alpha, const Dataset& ds) {
    return logrank(a.extent, b.extent, ds).p_value > alpha;
}

MetricsReport compute_metrics(const SubgroupSet& set, const Dataset& ds, double alpha) {
    MetricsReport rep;
    rep.n_subgroups = static_cast<int>(set.members.size());
    rep.empty_set = set.members.empty();
    rep.notes.push_back("epsilon counts members whose model differs from the baseline (p <= alpha)");
    rep.notes.push_back("g_hat averages cover counts over records, so uniform cover gives cr = 0");
    if (rep.empty_set) return rep;

    const double n = static_cast<double>(set.members.size());
    const double omega = static_cast<double>(ds.n_records());

    int exceptional = 0;
    double length_sum = 0.0, cov_sum = 0.0;
    for (const auto& m : set.members) {
        if (quality_with_p(m.subgroup.extent, set.baseline, ds).p_value <= alpha) ++exceptional;
        length_sum += static_cast<double>(m.subgroup.description.size());
        cov_sum += static_cast<double>(m.subgroup.extent.count());
    }
    rep.epsilon = exceptional / n;
    rep.avg_length = length_sum / n;
    rep.sg_cov = cov_sum / (n * omega);
    rep.db_cov = static_cast<double>(set.union_extent(ds).count()) / omega;

    const std::vector<int> counts = set.cover_counts(ds);
    double g_sum = 0.0;
    for (int c : counts) g_sum += c;
    const double g_hat = g_sum / omega;
    rep.g_hat = g_hat;
    if (g_hat > 0.0) {
        double dev = 0.0;
        for (int c : counts) dev += std::abs(c - g_hat) / g_hat;
        rep.cr = dev / omega;
    }

    if (set.members.size() >= 2) {
        double sum_d = 0.0, sum_c = 0.0, sum_m = 0.0;
        int pairs = 0;
        for (std::size_t i = 0; i < set.members.size(); ++i) {
            for (std::size_t j = i + 1; j < set.members.size(); ++j) {
                const Subgroup& a = set.members[i].subgroup;
                const Subgroup& b = set.members[j].subgroup;
                sum_d += sim_description(a, b, ds);
                sum_c += sim_coverage(a, b);
                sum_m += sim_model(a, b, alpha, ds) ? 1.0 : 0.0;
                ++pairs;
            }
        }
        rep.rho_d = sum_d / pairs;
        rep.rho_c = sum_c / pairs;
        rep.rho_m = sum_m / pairs;
    }
    return rep;
}

SimilarityMeasure similarity_measure_from_string(const std::string& s) {
    if (s == "description") return SimilarityMeasure::description;
    if (s == "coverage") return SimilarityMeasure::coverage;
    if (s == "model") return SimilarityMeasure::model;
    throw std::invalid_argument("similarity measure must be description|coverage|model, got '" +
                                s + "'");
}

const char* to_string(SimilarityMeasure m) {
    switch (m) {
        case SimilarityMeasure::description: return "description";
        case SimilarityMeasure::coverage: return "coverage";
        default: return "model";
    }
}

SimilarityMatrix cross_similarity(const SubgroupSet& set_a, const SubgroupSet& set_b,
                                  SimilarityMeasure measure, double alpha, const Dataset& ds) {
    if (set_a.members.empty() || set_b.members.empty())
        throw std::invalid_argument("cross_similarity: both sets must be non-empty");

    SimilarityMatrix m;
    m.measure = measure;
    for (std::size_t i = 0; i < set_a.members.size(); ++i)
        m.row_labels.push_back(set_a.members[i].subgroup.description.render(ds));
    for (std::size_t j = 0; j < set_b.members.size(); ++j)
        m.col_labels.push_back(set_b.members[j].subgroup.description.render(ds));

    m.values.assign(set_a.members.size(), std::vector<double>(set_b.members.size(), 0.0));
    for (std::size_t i = 0; i < set_a.members.size(); ++i) {
        for (std::size_t j = 0; j < set_b.members.size(); ++j) {
            const Subgroup& a = set_a.members[i].subgroup;
            const Subgroup& b = set_b.members[j].subgroup;
            switch (measure) {
                case SimilarityMeasure::description: m.values[i][j] = sim_description(a, b, ds); break;
                case SimilarityMeasure::coverage: m.values[i][j] = sim_coverage(a, b); break;
                case SimilarityMeasure::model:
                    m.values[i][j] = sim_model(a, b, alpha, ds) ? 1.0 : 0.0;
                    break;
            }
        }
    }
    return m;
}

}  // namespace esmam
