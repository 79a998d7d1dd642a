#pragma once

#include "gdpf/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gdpf::harness {

struct EstimateRow {
    ClusterId id = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

/// Tracker output indexed by frame.
using EstimateFrames = std::vector<std::vector<EstimateRow>>;

/// Output of one tracker over one scenario.
struct TrackerRun {
    EstimateFrames estimates;
    /// Wall-clock seconds spent in the tracker's per-frame step.
    std::vector<double> frame_seconds;
    std::vector<std::size_t> live_tracks;
};

}  // namespace gdpf::harness
