#pragma once

#include "gdpf/assoc_priors.hpp"
#include "gdpf/filter.hpp"
#include "gdpf/harness/config.hpp"
#include "gdpf/harness/estimates.hpp"
#include "gdpf/harness/evaluate.hpp"
#include "gdpf/harness/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gdpf::harness {

enum class TrackerKind { gdpf_bbox, gdpf_grid, gdpf_point, nn };

/// gdpf-bbox, gdpf-grid, gdpf (plain CRP, no link prior) or nn.
TrackerKind parse_tracker(std::string_view name);
std::string_view to_string(TrackerKind kind);

/// The GDPF variant matching a scenario's measurement kind.
TrackerKind gdpf_for(MeasurementKind kind);

/// Expands "both" into the matching GDPF variant plus nn.
std::vector<TrackerKind> expand_trackers(const std::vector<std::string>& names, MeasurementKind kind);

/// Runs GDPF over the scenario. Frame time covers process_frame only.
TrackerRun run_gdpf(const Scenario& scenario, const TrackerConfig& config, LinkMode mode);

TrackerRun run_tracker(const Scenario& scenario, const TrackerConfig& config, TrackerKind kind);

/// Fills the timing and track-count fields of an evaluation from a tracker run.
void attach_run_stats(EvalResult& result, const TrackerRun& run);

/// frame,id,error
void write_eval_csv(const std::filesystem::path& path, const EvalResult& result);

/// "key: value" description of one evaluation.
std::string format_eval_summary(const EvalResult& result);

struct PipelineRow {
    std::string tracker;
    EvalResult eval;
};

struct PipelineResult {
    std::string scenario;
    std::vector<PipelineRow> rows;
};

/// Generates or loads the scenario, runs every selected tracker and evaluates it.
///
/// Layout under `out_dir`:
///   scenario/                     scenario.txt, truth.csv, measurements.csv
///   <tracker>/tracked_objects.csv frame,id,x,y
///   <tracker>/eval.csv            frame,id,error
///   summary.txt                   one "result.<tracker>: ..." line per tracker
PipelineResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir);

}  // namespace gdpf::harness
