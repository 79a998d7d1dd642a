// Command-line front end: simulate -> track -> eval, plus bench and a one-shot run.

#include "gdpf/errors.hpp"
#include "gdpf/harness/bench.hpp"
#include "gdpf/harness/config.hpp"
#include "gdpf/harness/csv_io.hpp"
#include "gdpf/harness/evaluate.hpp"
#include "gdpf/harness/pipeline.hpp"
#include "gdpf/harness/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace fs = std::filesystem;
using namespace gdpf::harness;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw gdpf::IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void emit(const std::string& text, const fs::path& file) {
    std::cout << text;
    write_text_file(file, text);
}

int cmd_simulate(const fs::path& spec_path, std::uint64_t seed, const fs::path& out) {
    const ScenarioSpec spec = scenario_spec_from(KeyValueFile::load(spec_path));
    const Scenario sc = generate_scenario(spec, seed);
    save_scenario(sc, out);
    std::size_t total = 0;
    for (const auto& f : sc.measurements) total += f.size();
    std::cout << "scenario: " << sc.meta.name << "\nframes: " << sc.frames << "\nmeasurements: " << total
              << "\nout: " << out.string() << '\n';
    return 0;
}

int cmd_track(const fs::path& scenario_dir, const std::string& tracker, const std::string& config_path,
              const fs::path& out) {
    const Scenario sc = load_scenario(scenario_dir);
    TrackerConfig cfg;
    if (!config_path.empty()) cfg = tracker_config_from(KeyValueFile::load(config_path));
    const TrackerKind kind = parse_tracker(tracker);
    const TrackerRun run = run_tracker(sc, cfg, kind);

    ensure_dir(out);
    write_estimates_file(out / "tracked_objects.csv", run.estimates);

    const double n = static_cast<double>(std::max<std::size_t>(run.frame_seconds.size(), 1));
    const double mean_time = std::accumulate(run.frame_seconds.begin(), run.frame_seconds.end(), 0.0) / n;
    const double mean_live = std::accumulate(run.live_tracks.begin(), run.live_tracks.end(), 0.0) / n;
    std::ostringstream summary;
    summary << "tracker: " << to_string(kind) << "\nscenario: " << sc.meta.name << "\nframes: " << sc.frames
            << "\nmean_frame_time: " << format_number(mean_time) << "\nmean_live_tracks: " << format_number(mean_live)
            << '\n';
    emit(summary.str(), out / "summary.txt");
    return 0;
}

int cmd_eval(const fs::path& truth_path, const fs::path& estimates_path, int gt_id, const fs::path& out) {
    const auto truth = read_truth_file(truth_path);
    const auto est = read_estimates_file(estimates_path);
    const EvalResult result = evaluate(truth, est, gt_id);
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    write_eval_csv(out, result);
    emit(format_eval_summary(result), out.parent_path() / (out.stem().string() + "_summary.txt"));
    return 0;
}

int cmd_bench(int objects, int frames, std::uint64_t seed, const std::string& out) {
    const BenchResult r = run_bench(objects, frames, seed);
    std::ostringstream summary;
    summary << "objects: " << r.objects << "\nframes: " << r.frames
            << "\nmean_frame_time: " << format_number(r.mean_frame_time)
            << "\nmax_frame_time: " << format_number(r.max_frame_time)
            << "\nmean_clusters: " << format_number(r.mean_clusters)
            << "\nmean_measurements: " << format_number(r.mean_measurements)
            << "\ntotal_seconds: " << format_number(r.total_seconds) << '\n';
    if (out.empty()) {
        std::cout << summary.str();
    } else {
        emit(summary.str(), out);
    }
    return 0;
}

int cmd_run(const fs::path& config_path, const fs::path& out) {
    const PipelineConfig cfg = load_pipeline_config(config_path);
    ensure_dir(out);
    run_pipeline(cfg, out);
    std::ifstream summary(out / "summary.txt");
    std::cout << summary.rdbuf();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Greedy Dirichlet process multi-target tracker"};
    app.require_subcommand(1);

    std::string spec_path, scenario_dir, tracker = "gdpf-bbox", config_path, out, truth_path, estimates_path;
    std::uint64_t seed = 1;
    int gt_id = 0, objects = 200, frames = 100;

    auto* simulate = app.add_subcommand("simulate", "generate a synthetic scenario");
    simulate->add_option("--spec", spec_path, "scenario spec file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--seed", seed, "random seed")->required();
    simulate->add_option("--out", out, "output directory")->required();

    auto* track = app.add_subcommand("track", "run a tracker over a scenario directory");
    track->add_option("--scenario", scenario_dir, "scenario directory")->required();
    track->add_option("--tracker", tracker, "gdpf-bbox | gdpf-grid | gdpf | nn")
        ->check(CLI::IsMember({"gdpf-bbox", "gdpf-grid", "gdpf", "nn"}));
    track->add_option("--config", config_path, "tracker config file")->check(CLI::ExistingFile);
    track->add_option("--out", out, "output directory")->required();

    auto* eval = app.add_subcommand("eval", "score estimates against the ground-truth object");
    eval->add_option("--truth", truth_path, "truth csv")->required();
    eval->add_option("--estimates", estimates_path, "estimates csv")->required();
    eval->add_option("--gt-id", gt_id, "ground-truth object id")->required();
    eval->add_option("--out", out, "per-frame csv")->required();

    auto* bench = app.add_subcommand("bench", "time the filter on a many-object scenario");
    bench->add_option("--objects", objects, "object count")->check(CLI::PositiveNumber);
    bench->add_option("--frames", frames, "frame count")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "random seed");
    bench->add_option("--out", out, "summary file");

    auto* run = app.add_subcommand("run", "simulate, track and evaluate from one config file");
    run->add_option("--config", config_path, "pipeline config file")->required();
    run->add_option("--out", out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(spec_path, seed, out);
        if (*track) return cmd_track(scenario_dir, tracker, config_path, out);
        if (*eval) return cmd_eval(truth_path, estimates_path, gt_id, out);
        if (*bench) return cmd_bench(objects, frames, seed, out);
        if (*run) return cmd_run(config_path, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
