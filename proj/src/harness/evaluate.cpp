#include "gdpf/harness/evaluate.hpp"

#include "gdpf/errors.hpp"

#include <cmath>
#include <limits>

namespace gdpf::harness {

EvalResult evaluate(const std::vector<std::vector<TruthState>>& truth, const EstimateFrames& estimates, int gt_id,
                    const EvalOptions& options) {
    EvalResult result;
    double squared_sum = 0.0;
    std::optional<ClusterId> previous;
    std::size_t estimate_total = 0;

    for (std::size_t f = 0; f < truth.size(); ++f) {
        const std::vector<EstimateRow> empty;
        const auto& frame_estimates = f < estimates.size() ? estimates[f] : empty;
        estimate_total += frame_estimates.size();

        const TruthState* gt = nullptr;
        for (const auto& t : truth[f]) {
            if (t.id == gt_id) gt = &t;
        }
        if (gt == nullptr) continue;

        const EstimateRow* best = nullptr;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const auto& e : frame_estimates) {
            const double d = (e.position - gt->position).norm();
            if (options.distance_cap && d > *options.distance_cap) continue;
            // Ties resolved by id so the result does not depend on row order.
            if (d < best_dist || (d == best_dist && best != nullptr && e.id < best->id)) {
                best_dist = d;
                best = &e;
            }
        }
        if (best == nullptr) {
            ++result.misses;
            continue;
        }

        result.per_frame.push_back({static_cast<int>(f), best->id, best_dist});
        squared_sum += best_dist * best_dist;
        if (previous && *previous != best->id) ++result.id_switches;
        previous = best->id;
    }

    if (result.per_frame.empty()) throw Error("no overlap");
    result.rmse = std::sqrt(squared_sum / static_cast<double>(result.per_frame.size()));
    if (!truth.empty()) result.mean_object_count = static_cast<double>(estimate_total) / static_cast<double>(truth.size());
    return result;
}

}  // namespace gdpf::harness
