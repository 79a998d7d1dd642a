#pragma once

#include "gdpf/model.hpp"

#include <cstdint>

namespace gdpf::harness {

struct BenchResult {
    int objects = 0;
    int frames = 0;
    double mean_frame_time = 0.0;
    double max_frame_time = 0.0;
    /// Wall-clock of the whole run including scenario generation.
    double total_seconds = 0.0;
    double mean_clusters = 0.0;
    double mean_measurements = 0.0;
};

/// Defaults with a car-sized spatial prior (a = b = 4). Bench objects have random
/// headings, and the split halves of a box sit ~2 m from its centre.
Hyperparameters bench_hyperparameters();

/// Runs GDPF (bounding-box links) over a generated many-object scenario.
BenchResult run_bench(int objects, int frames, std::uint64_t seed = 1,
                      const Hyperparameters& h = bench_hyperparameters());

}  // namespace gdpf::harness
