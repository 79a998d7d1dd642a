#pragma once

#include "gdpf/harness/estimates.hpp"
#include "gdpf/harness/scenario.hpp"

#include <optional>
#include <vector>

namespace gdpf::harness {

struct FrameMatch {
    int frame = 0;
    ClusterId id = 0;
    double error = 0.0;
};

struct EvalResult {
    double rmse = 0.0;
    int id_switches = 0;
    /// Frames where the ground-truth object existed but no estimate was available.
    int misses = 0;
    std::vector<FrameMatch> per_frame;
    double mean_frame_time = 0.0;
    double mean_object_count = 0.0;
};

struct EvalOptions {
    /// Estimates farther than this from the truth are ignored. Off by default.
    std::optional<double> distance_cap;
};

/// Scores the estimate nearest to the ground-truth object in every frame it exists.
/// Throws Error("no overlap") when no frame could be matched.
EvalResult evaluate(const std::vector<std::vector<TruthState>>& truth, const EstimateFrames& estimates, int gt_id,
                    const EvalOptions& options = {});

}  // namespace gdpf::harness
