#pragma once

#include "gdpf/assoc_priors.hpp"
#include "gdpf/dynamics.hpp"
#include "gdpf/model.hpp"

#include <span>
#include <vector>

namespace gdpf {

/// Clusters whose prediction fails this many frames in a row get zero existence and are pruned.
inline constexpr int kFrozenFrameLimit = 3;

struct FilterModels {
    MotionModel motion;
    MeasurementModel measurement;
    TransitionPrior transition = transition_prior;
};

/// Constant-velocity motion and (x, y) observation built from the hyperparameters.
FilterModels make_models(const Hyperparameters& h);

/// Advances every cluster one step, decays existence and counts, bumps the frame
/// counter and starts a fresh assignment record. Returns ids of clusters that failed
/// to predict and are frozen for this frame.
std::vector<ClusterId> predict_frame(FilterState& state, const MotionModel& model);

struct LabelChoice {
    Label label;
    double posterior = 1.0;
    /// The score row was all zero and the choice fell back to a new cluster.
    bool degenerate = false;
};

/// Argmax of the label posterior. Exact ties go to an existing cluster over a new
/// one, then to the larger assign_count, then to the smaller id.
LabelChoice choose_best_label(const Measurement& y_i, const FilterState& state, const LinkContext& ctx,
                              const TransitionPrior& transition = transition_prior);

/// Applies the chosen label and records it. A new label births a cluster; an existing
/// label runs the Kalman correction and boosts existence. Returns the cluster id the
/// measurement ended up in. On SingularInnovationError nothing is modified.
ClusterId apply_assignment(FilterState& state, std::size_t index, const Measurement& y_i, Label label,
                           const MeasurementModel& model);

/// Removes exactly the clusters with existence < gamma and returns their ids.
std::vector<ClusterId> prune_components(FilterState& state);

/// One greedy pass over the frame: predict, then for each measurement in the given
/// order choose the best label and apply it, then prune.
FrameReport process_frame(FilterState& state, std::span<const Measurement> measurements,
                          const FilterModels& models, LinkMode mode);

struct TrackEstimate {
    ClusterId id = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
    double existence = 0.0;
    bool moving = false;
};

/// One estimate per live cluster with a finite state; moving means speed > speed_threshold.
std::vector<TrackEstimate> estimates(const FilterState& state, double speed_threshold);

/// Filter state plus the models it runs with.
class GreedyDpFilter {
public:
    GreedyDpFilter(const Hyperparameters& h, LinkMode mode);

    FrameReport step(std::span<const Measurement> measurements);

    [[nodiscard]] const FilterState& state() const { return state_; }
    [[nodiscard]] const FilterModels& models() const { return models_; }
    [[nodiscard]] LinkMode mode() const { return mode_; }

    void set_transition(TransitionPrior transition) { models_.transition = std::move(transition); }

private:
    FilterState state_;
    FilterModels models_;
    LinkMode mode_;
};

}  // namespace gdpf
