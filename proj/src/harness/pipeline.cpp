#include "gdpf/harness/pipeline.hpp"

#include "gdpf/errors.hpp"
#include "gdpf/harness/baseline.hpp"
#include "gdpf/harness/csv_io.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gdpf::harness {

TrackerKind parse_tracker(std::string_view name) {
    if (name == "gdpf-bbox") return TrackerKind::gdpf_bbox;
    if (name == "gdpf-grid") return TrackerKind::gdpf_grid;
    if (name == "gdpf") return TrackerKind::gdpf_point;
    if (name == "nn") return TrackerKind::nn;
    throw ValidationError("unknown tracker '" + std::string(name) + "' (expected gdpf-bbox, gdpf-grid, gdpf or nn)");
}

std::string_view to_string(TrackerKind kind) {
    switch (kind) {
        case TrackerKind::gdpf_bbox: return "gdpf-bbox";
        case TrackerKind::gdpf_grid: return "gdpf-grid";
        case TrackerKind::gdpf_point: return "gdpf";
        case TrackerKind::nn: return "nn";
    }
    return "unknown";
}

TrackerKind gdpf_for(MeasurementKind kind) {
    switch (kind) {
        case MeasurementKind::bbox: return TrackerKind::gdpf_bbox;
        case MeasurementKind::grid: return TrackerKind::gdpf_grid;
        case MeasurementKind::point: return TrackerKind::gdpf_point;
    }
    return TrackerKind::gdpf_point;
}

std::vector<TrackerKind> expand_trackers(const std::vector<std::string>& names, MeasurementKind kind) {
    std::vector<TrackerKind> out;
    auto add = [&out](TrackerKind k) {
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    };
    for (const auto& name : names) {
        if (name == "both") {
            add(gdpf_for(kind));
            add(TrackerKind::nn);
        } else {
            add(parse_tracker(name));
        }
    }
    return out;
}

TrackerRun run_gdpf(const Scenario& scenario, const TrackerConfig& config, LinkMode mode) {
    Hyperparameters h = config.hyper;
    if (!config.dt_set) h.dt = scenario.dt;
    GreedyDpFilter filter(h, mode);

    TrackerRun run;
    run.estimates.reserve(scenario.measurements.size());
    for (const auto& frame : scenario.measurements) {
        const FrameReport report = filter.step(frame);
        run.frame_seconds.push_back(report.elapsed);
        run.live_tracks.push_back(filter.state().clusters.size());

        std::vector<EstimateRow> rows;
        for (const auto& e : estimates(filter.state(), config.output.speed_threshold)) {
            if (e.existence >= config.output.min_existence) rows.push_back({e.id, e.position});
        }
        run.estimates.push_back(std::move(rows));
    }
    return run;
}

TrackerRun run_tracker(const Scenario& scenario, const TrackerConfig& config, TrackerKind kind) {
    switch (kind) {
        case TrackerKind::gdpf_bbox: return run_gdpf(scenario, config, LinkMode::bbox_signed_distance);
        case TrackerKind::gdpf_grid: return run_gdpf(scenario, config, LinkMode::grid_neighbor);
        case TrackerKind::gdpf_point: return run_gdpf(scenario, config, LinkMode::none);
        case TrackerKind::nn: return nn_baseline_track(scenario, config.nn);
    }
    throw ValidationError("unknown tracker kind");
}

void attach_run_stats(EvalResult& result, const TrackerRun& run) {
    if (!run.frame_seconds.empty()) {
        result.mean_frame_time = std::accumulate(run.frame_seconds.begin(), run.frame_seconds.end(), 0.0) /
                                 static_cast<double>(run.frame_seconds.size());
    }
}

void write_eval_csv(const std::filesystem::path& path, const EvalResult& result) {
    std::ostringstream out;
    out << "frame,id,error\n";
    for (const auto& m : result.per_frame) out << m.frame << ',' << m.id << ',' << format_number(m.error) << '\n';
    write_text_file(path, out.str());
}

std::string format_eval_summary(const EvalResult& r) {
    std::ostringstream out;
    out << "rmse: " << format_number(r.rmse) << '\n'
        << "id_switches: " << r.id_switches << '\n'
        << "misses: " << r.misses << '\n'
        << "matched_frames: " << r.per_frame.size() << '\n'
        << "mean_frame_time: " << format_number(r.mean_frame_time) << '\n'
        << "mean_object_count: " << format_number(r.mean_object_count) << '\n';
    return out.str();
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir) {
    const Scenario scenario =
        config.scenario_dir ? load_scenario(*config.scenario_dir) : generate_scenario(config.spec, config.seed);
    save_scenario(scenario, out_dir / "scenario");

    PipelineResult result;
    result.scenario = scenario.meta.name;
    for (TrackerKind kind : expand_trackers(config.trackers, scenario.meta.kind)) {
        const std::string name(to_string(kind));
        const TrackerRun run = run_tracker(scenario, config.tracker, kind);

        const auto dir = out_dir / name;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
        write_estimates_file(dir / "tracked_objects.csv", run.estimates);

        EvalResult eval = evaluate(scenario.truths, run.estimates, scenario.meta.gt_id);
        attach_run_stats(eval, run);
        write_eval_csv(dir / "eval.csv", eval);
        result.rows.push_back({name, std::move(eval)});
    }

    std::ostringstream summary;
    summary << "scenario: " << scenario.meta.name << '\n'
            << "seed: " << scenario.seed << '\n'
            << "frames: " << scenario.frames << '\n'
            << "gt_id: " << scenario.meta.gt_id << '\n';
    for (const auto& row : result.rows) {
        const auto& e = row.eval;
        summary << "result." << row.tracker << ": rmse=" << format_number(e.rmse) << " id_switches=" << e.id_switches
                << " misses=" << e.misses << " matched_frames=" << e.per_frame.size()
                << " mean_frame_time=" << format_number(e.mean_frame_time)
                << " mean_object_count=" << format_number(e.mean_object_count) << '\n';
    }
    write_text_file(out_dir / "summary.txt", summary.str());
    return result;
}

}  // namespace gdpf::harness
