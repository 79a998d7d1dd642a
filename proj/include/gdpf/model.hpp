#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gdpf {

using ClusterId = std::int64_t;

/// Association label: an existing cluster id, or std::nullopt for "open a new cluster".
using Label = std::optional<ClusterId>;

/// Oriented bounding box around a measurement center; half lengths in meters, heading in radians.
struct BoxExtent {
    double half_x = 0.0;
    double half_y = 0.0;
    double heading = 0.0;
};

struct GridCell {
    int row = 0;
    int col = 0;

    friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// One detection at one frame. Position is the box center or the grid-cell center.
struct Measurement {
    int frame = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    std::optional<BoxExtent> extent;
    std::optional<GridCell> cell;
    double weight = 1.0;
};

/// Throws ValidationError when the measurement breaks its invariants.
void validate_measurement(const Measurement& m);

/// A persistent mixture component, i.e. one track.
struct Cluster {
    ClusterId id = 0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    /// Decayed pseudo-count of assigned measurements.
    double assign_count = 0.0;
    double existence = 0.0;
    int born_frame = 0;
    int last_assigned_frame = 0;
    /// Consecutive frames this cluster failed to predict; frozen clusters take no measurements.
    int frozen_frames = 0;

    [[nodiscard]] bool frozen() const { return frozen_frames > 0; }
};

struct Hyperparameters {
    double alpha = 1.0;
    double gamma = 0.1;
    /// Car-prior ellipse denominators (m^2) along x and y.
    double a = 1.0;
    double b = 1.0;
    double process_noise_scale = 0.5;
    Eigen::Matrix2d meas_noise_cov = Eigen::Matrix2d::Identity() * 0.04;
    double survival_prob = 0.98;
    double assoc_gain = 0.3;
    double count_decay = 0.7;
    double birth_existence = 0.3;
    /// Stand-in for the base-measure marginal likelihood of a new cluster.
    double new_cluster_likelihood = 0.05;
    double dt = 0.1;

    /// Length scale (m) mapping bounding-box signed distance to a link probability.
    double link_scale = 1.0;
    /// Link prior for a persistent cluster that has no same-frame member yet.
    double link_floor = 1.0;
    bool use_crp_factor = true;
    /// Birth velocity variance is birth_velocity_max^2 / 3.
    double birth_velocity_max = 15.0;
};

/// Returns h unchanged when all ranges hold, otherwise throws ValidationError naming the field.
const Hyperparameters& validate_hyperparameters(const Hyperparameters& h);

/// Measurement index within the frame -> cluster id.
using AssignmentRecord = std::map<std::size_t, ClusterId>;

struct FilterState {
    std::vector<Cluster> clusters;
    Hyperparameters hyper;
    int frame = 0;
    ClusterId next_id = 0;
    AssignmentRecord last_assignments;
    /// Assignments of the frame before the current one; input to the transition prior.
    AssignmentRecord previous_assignments;

    [[nodiscard]] const Cluster* find(ClusterId id) const;
    [[nodiscard]] Cluster* find(ClusterId id);
};

FilterState new_filter_state(const Hyperparameters& h);

/// Walks every cluster and returns one message per broken invariant; empty when healthy.
std::vector<std::string> audit(const FilterState& state);

struct AssignmentEntry {
    std::size_t index = 0;
    ClusterId id = 0;
    double posterior = 0.0;
};

struct MeasurementFailure {
    std::size_t index = 0;
    std::string message;
};

struct FrameReport {
    int frame = 0;
    std::vector<AssignmentEntry> assignments;
    std::vector<ClusterId> born;
    std::vector<ClusterId> pruned;
    std::vector<MeasurementFailure> unassigned;
    std::vector<std::string> warnings;
    double elapsed = 0.0;
};

}  // namespace gdpf
