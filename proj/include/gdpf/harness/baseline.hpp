#pragma once

#include "gdpf/harness/estimates.hpp"
#include "gdpf/harness/scenario.hpp"

#include <Eigen/Dense>

namespace gdpf::harness {

/// Greedy nearest-neighbor tracker with per-track constant-velocity Kalman filters
/// and miss-count deletion.
struct NnConfig {
    double gate_radius = 2.0;
    /// A track is deleted once it has gone this many frames without a measurement.
    int max_misses = 5;
    /// Tracks are reported once they have collected this many hits.
    int min_hits = 2;
    double process_noise_scale = 0.5;
    Eigen::Matrix2d meas_noise = Eigen::Matrix2d::Identity() * 0.04;
    double birth_velocity_max = 15.0;
};

TrackerRun nn_baseline_track(const Scenario& scenario, const NnConfig& config = {});

}  // namespace gdpf::harness
