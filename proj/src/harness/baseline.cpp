#include "gdpf/harness/baseline.hpp"

#include "gdpf/dynamics.hpp"
#include "gdpf/errors.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

namespace gdpf::harness {

namespace {

struct NnTrack {
    ClusterId id = 0;
    GaussianState state;
    int hits = 0;
    int misses = 0;
};

}  // namespace

TrackerRun nn_baseline_track(const Scenario& scenario, const NnConfig& config) {
    if (!(config.gate_radius > 0.0) || config.max_misses < 0 || config.min_hits < 1) {
        throw ValidationError("nn baseline: gate_radius must be > 0, max_misses >= 0 and min_hits >= 1");
    }
    const MotionModel motion = cv_model(scenario.dt, config.process_noise_scale);
    const MeasurementModel measurement = position_measurement_model(config.meas_noise);

    TrackerRun run;
    std::vector<NnTrack> tracks;
    ClusterId next_id = 0;

    for (const auto& frame : scenario.measurements) {
        const auto start = std::chrono::steady_clock::now();

        for (auto& t : tracks) t.state = kf_predict(t.state.mean, t.state.cov, motion);

        // (distance, track, measurement) pairs inside the gate, assigned shortest first.
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
            const Eigen::Vector2d predicted = tracks[ti].state.mean.head<2>();
            for (std::size_t mi = 0; mi < frame.size(); ++mi) {
                const double d = (frame[mi].position - predicted).norm();
                if (d <= config.gate_radius) pairs.emplace_back(d, ti, mi);
            }
        }
        std::sort(pairs.begin(), pairs.end());

        std::vector<bool> track_used(tracks.size(), false);
        std::vector<bool> meas_used(frame.size(), false);
        for (const auto& [d, ti, mi] : pairs) {
            if (track_used[ti] || meas_used[mi]) continue;
            track_used[ti] = meas_used[mi] = true;
            NnTrack& t = tracks[ti];
            UpdateResult u = kf_update(t.state.mean, t.state.cov, frame[mi].position, measurement);
            t.state = {std::move(u.mean), std::move(u.cov)};
            ++t.hits;
            t.misses = 0;
        }
        for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
            if (!track_used[ti]) ++tracks[ti].misses;
        }
        std::erase_if(tracks, [&](const NnTrack& t) { return t.misses > config.max_misses; });

        for (std::size_t mi = 0; mi < frame.size(); ++mi) {
            if (meas_used[mi]) continue;
            NnTrack t;
            t.id = next_id++;
            t.state = birth_state(frame[mi].position, config.meas_noise, config.birth_velocity_max);
            t.hits = 1;
            tracks.push_back(std::move(t));
        }

        run.frame_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        run.live_tracks.push_back(tracks.size());

        std::vector<EstimateRow> out;
        for (const auto& t : tracks) {
            if (t.hits >= config.min_hits) out.push_back({t.id, t.state.mean.head<2>()});
        }
        run.estimates.push_back(std::move(out));
    }
    return run;
}

}  // namespace gdpf::harness
