#pragma once

#include "gdpf/model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gdpf {

enum class LinkMode { bbox_signed_distance, grid_neighbor, none };

std::string_view to_string(LinkMode mode);

/// Same-frame association state consulted by the distance-dependent prior.
///
/// Holds the frame's measurements in processing order, how many of them have
/// been assigned so far, and which measurements each cluster has collected in
/// this frame. The measurements must outlive the context.
class LinkContext {
public:
    LinkContext(std::span<const Measurement> measurements, LinkMode mode);

    [[nodiscard]] std::span<const Measurement> measurements() const { return measurements_; }
    [[nodiscard]] std::size_t processed_count() const { return processed_; }
    [[nodiscard]] LinkMode mode() const { return mode_; }

    /// Indices of this frame's measurements already assigned to `id`.
    [[nodiscard]] std::span<const std::size_t> members(ClusterId id) const;

    /// Marks measurement `index` as assigned to `id`.
    void record(std::size_t index, ClusterId id);

private:
    std::span<const Measurement> measurements_;
    LinkMode mode_;
    std::size_t processed_ = 0;
    std::unordered_map<ClusterId, std::vector<std::size_t>> members_;
};

/// Chinese-restaurant weight. processed_count is the number of measurements
/// already assigned in this frame, so the first measurement sees alpha/alpha.
/// n_k == 0 is weighted like a new table.
double crp_weight(double n_k, std::size_t processed_count, double alpha, bool is_new);

/// Signed distance from `point` to the oriented box (negative inside).
double box_signed_distance(const Eigen::Vector2d& point, const Eigen::Vector2d& center, const BoxExtent& box);

/// exp(-max(s, 0) / scale) with s the signed distance from y_i's center to y_l's box.
double bbox_link_prior(const Measurement& y_i, const Measurement& y_l, double scale);

/// 1 when the two cells are identical or 8-neighbors, else 0.
double grid_link_prior(const Measurement& y_i, const Measurement& y_l);

struct LinkParams {
    double scale = 1.0;
    /// Returned for an existing cluster with no member yet in this frame.
    double floor = 1.0;
};

/// Distance-dependent CRP factor. `candidate == std::nullopt` is the self link (new cluster).
double ddcrp_prior(const Measurement& y_i, Label candidate, const LinkContext& ctx, double alpha,
                   const LinkParams& params = {});

/// Car-model cluster prior exp(-(dx^2/a + dy^2/b)) against the cluster's predicted position.
double car_prior_likelihood(const Measurement& y_i, const Cluster& cluster, double a, double b);

/// p(z_i(t) = candidate | z(t-1)). Pluggable; the shipped prior is uniform.
using TransitionPrior = std::function<double(Label candidate, const AssignmentRecord& previous)>;

double transition_prior(Label candidate, const AssignmentRecord& previous);

struct ScoreEntry {
    Label label;
    double raw = 0.0;
    double posterior = 0.0;
};

/// One candidate per live cluster followed by the new-cluster candidate (always last).
struct ScoreRow {
    std::vector<ScoreEntry> entries;

    [[nodiscard]] const ScoreEntry& new_entry() const { return entries.back(); }
};

/// Normalizes raw scores in place. Throws DegenerateRowError when they sum to zero.
void normalize(ScoreRow& row);

/// Label posterior over all live, non-frozen clusters plus a new cluster.
ScoreRow assignment_posterior(const Measurement& y_i, std::span<const Cluster> clusters, const LinkContext& ctx,
                              const Hyperparameters& h, const AssignmentRecord& previous = {},
                              const TransitionPrior& transition = transition_prior);

}  // namespace gdpf
