#include "gdpf/harness/bench.hpp"

#include "gdpf/filter.hpp"
#include "gdpf/harness/scenario.hpp"

#include <algorithm>
#include <chrono>

namespace gdpf::harness {

Hyperparameters bench_hyperparameters() {
    Hyperparameters h;
    h.a = 4.0;
    h.b = 4.0;
    return h;
}

BenchResult run_bench(int objects, int frames, std::uint64_t seed, const Hyperparameters& h) {
    const auto start = std::chrono::steady_clock::now();
    const ScenarioSpec spec = bench_spec(objects, frames, seed);
    const Scenario scenario = generate_scenario(spec, seed);

    Hyperparameters hyper = h;
    hyper.dt = scenario.dt;
    GreedyDpFilter filter(hyper, LinkMode::bbox_signed_distance);

    BenchResult r;
    r.objects = objects;
    r.frames = frames;
    double time_sum = 0.0;
    double cluster_sum = 0.0;
    double meas_sum = 0.0;
    for (const auto& frame : scenario.measurements) {
        const FrameReport report = filter.step(frame);
        time_sum += report.elapsed;
        r.max_frame_time = std::max(r.max_frame_time, report.elapsed);
        cluster_sum += static_cast<double>(filter.state().clusters.size());
        meas_sum += static_cast<double>(frame.size());
    }
    const double n = static_cast<double>(scenario.measurements.size());
    r.mean_frame_time = time_sum / n;
    r.mean_clusters = cluster_sum / n;
    r.mean_measurements = meas_sum / n;
    r.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace gdpf::harness
