#include "gdpf/errors.hpp"
#include "gdpf/harness/config.hpp"
#include "gdpf/harness/csv_io.hpp"
#include "gdpf/harness/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gdpf;
using namespace gdpf::harness;
namespace fs = std::filesystem;

namespace {

KeyValueFile parse(const std::string& text) {
    std::istringstream in(text);
    return KeyValueFile::parse(in, "test.ini");
}

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("gdpf_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST(KeyValueFile, SectionsAndComments) {
    const KeyValueFile f = parse("top = 1\n# comment\n[filter]\nalpha = 2.5 ; trailing\n\n[model]\ndt=0.2\n");
    EXPECT_EQ(f.integer("", "top"), 1);
    EXPECT_EQ(f.number("filter", "alpha"), 2.5);
    EXPECT_EQ(f.number("model", "dt"), 0.2);
    EXPECT_FALSE(f.number("model", "missing"));
    EXPECT_EQ(f.where("filter", "alpha"), "test.ini:4");
}

TEST(KeyValueFile, Errors) {
    EXPECT_NE(error_of([] { parse("[a]\nx = 1\nx = 2\n"); }).find("test.ini:3: duplicate key 'x'"), std::string::npos);
    EXPECT_NE(error_of([] { parse("[a\n"); }).find("test.ini:1"), std::string::npos);
    EXPECT_NE(error_of([] { parse("just text\n"); }).find("expected 'key = value'"), std::string::npos);
    const KeyValueFile f = parse("[a]\nflag = maybe\nv = 1,2\nn = abc\n");
    EXPECT_THROW((void)f.boolean("a", "flag"), IoError);
    EXPECT_THROW((void)f.numbers("a", "v", 3), IoError);
    EXPECT_NE(error_of([&] { (void)f.number("a", "n"); }).find("test.ini:4"), std::string::npos);
    EXPECT_NE(error_of([&] { f.require_known("a", {"flag", "v"}); }).find("unknown key 'n'"), std::string::npos);
    EXPECT_NE(error_of([] { KeyValueFile::load("/nonexistent/x.ini"); }).find("/nonexistent/x.ini"), std::string::npos);
}

TEST(TrackerConfig, ReadsEveryGroup) {
    const TrackerConfig c = tracker_config_from(parse(
        "[filter]\nalpha = 0.5\ngamma = 0.05\na = 4\nb = 2\nsurvival_prob = 0.9\nassoc_gain = 0.4\n"
        "count_decay = 0.6\nbirth_existence = 0.2\nnew_cluster_likelihood = 0.01\nlink_scale = 2\n"
        "link_floor = 0.5\nuse_crp_factor = false\nbirth_velocity_max = 10\n"
        "[model]\ndt = 0.05\nprocess_noise_scale = 1.5\nmeas_noise_std = 0.3\n"
        "[output]\nmin_existence = 0.6\nspeed_threshold = 1\n"
        "[baseline]\ngate_radius = 3\nmax_misses = 2\nmin_hits = 1\n"));
    EXPECT_EQ(c.hyper.alpha, 0.5);
    EXPECT_EQ(c.hyper.gamma, 0.05);
    EXPECT_EQ(c.hyper.a, 4.0);
    EXPECT_EQ(c.hyper.b, 2.0);
    EXPECT_EQ(c.hyper.survival_prob, 0.9);
    EXPECT_EQ(c.hyper.assoc_gain, 0.4);
    EXPECT_EQ(c.hyper.count_decay, 0.6);
    EXPECT_EQ(c.hyper.birth_existence, 0.2);
    EXPECT_EQ(c.hyper.new_cluster_likelihood, 0.01);
    EXPECT_EQ(c.hyper.link_scale, 2.0);
    EXPECT_EQ(c.hyper.link_floor, 0.5);
    EXPECT_FALSE(c.hyper.use_crp_factor);
    EXPECT_EQ(c.hyper.birth_velocity_max, 10.0);
    EXPECT_EQ(c.hyper.dt, 0.05);
    EXPECT_TRUE(c.dt_set);
    EXPECT_EQ(c.hyper.process_noise_scale, 1.5);
    EXPECT_NEAR(c.hyper.meas_noise_cov(0, 0), 0.09, 1e-15);
    EXPECT_EQ(c.hyper.meas_noise_cov(0, 1), 0.0);
    EXPECT_EQ(c.output.min_existence, 0.6);
    EXPECT_EQ(c.output.speed_threshold, 1.0);
    EXPECT_EQ(c.nn.gate_radius, 3.0);
    EXPECT_EQ(c.nn.max_misses, 2);
    EXPECT_EQ(c.nn.min_hits, 1);
}

TEST(TrackerConfig, Rejections) {
    EXPECT_NE(error_of([] { tracker_config_from(parse("[filter]\nalpha = 0\n")); }).find("alpha must be > 0"),
              std::string::npos);
    EXPECT_NE(error_of([] { tracker_config_from(parse("[filter]\nbogus = 1\n")); }).find("test.ini:2"),
              std::string::npos);
    EXPECT_THROW(tracker_config_from(parse("[model]\nmeas_noise_std = 1\nmeas_noise_cov = 1,0,1\n")), IoError);
    const TrackerConfig c = tracker_config_from(parse("[model]\nmeas_noise_cov = 0.5,0.1,0.3\n"));
    EXPECT_EQ(c.hyper.meas_noise_cov(1, 0), 0.1);
    EXPECT_FALSE(c.dt_set);
}

TEST(ScenarioConfig, PresetWithOverridesAndTargets) {
    const ScenarioSpec s = scenario_spec_from(parse("[scenario]\npreset = crossing3\nframes = 40\nclutter_rate = 0\n"));
    EXPECT_EQ(s.name, "crossing3");
    EXPECT_EQ(s.frames, 40);
    EXPECT_EQ(s.clutter_rate, 0.0);
    EXPECT_EQ(s.targets.size(), 3u);

    const ScenarioSpec t = scenario_spec_from(parse(
        "[scenario]\nkind = grid\nfov = -5,5,-5,5\n[target.3]\nx = 1\nvy = 2\n[target.1]\ny = -1\nend = 10\n"));
    EXPECT_EQ(t.kind, MeasurementKind::grid);
    EXPECT_EQ(t.fov.x_max, 5.0);
    ASSERT_EQ(t.targets.size(), 2u);
    EXPECT_EQ(t.targets[0].id, 1);
    EXPECT_EQ(t.targets[0].end, 10);
    EXPECT_EQ(t.targets[1].velocity.y(), 2.0);

    EXPECT_THROW(scenario_spec_from(parse("[scenario]\npreset = nope\n")), ValidationError);
    EXPECT_THROW(scenario_spec_from(parse("[scenario]\nkind = laser\n")), ValidationError);
    EXPECT_THROW(scenario_spec_from(parse("[scenario]\ndet_prob = 0\n")), ValidationError);
}

TEST(PipelineConfig, TrackersAndPaths) {
    const PipelineConfig c = pipeline_config_from(parse("[scenario]\npreset = crossing3\nseed = 9\n"));
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.trackers, (std::vector<std::string>{"both"}));

    const PipelineConfig d =
        pipeline_config_from(parse("[scenario]\npath = data/run1\n[pipeline]\ntracker = nn\n"), "/base");
    ASSERT_TRUE(d.scenario_dir);
    EXPECT_EQ(*d.scenario_dir, fs::path("/base/data/run1"));

    EXPECT_THROW(pipeline_config_from(parse("[scenario]\npreset = crossing3\n[extra]\nx = 1\n")), IoError);
    EXPECT_THROW(pipeline_config_from(parse("[pipeline]\ntracker = nn\n")), ValidationError);
}

TEST(Trackers, ParseAndExpand) {
    EXPECT_EQ(parse_tracker("gdpf-bbox"), TrackerKind::gdpf_bbox);
    EXPECT_EQ(parse_tracker("gdpf-grid"), TrackerKind::gdpf_grid);
    EXPECT_EQ(parse_tracker("gdpf"), TrackerKind::gdpf_point);
    EXPECT_EQ(parse_tracker("nn"), TrackerKind::nn);
    EXPECT_THROW(parse_tracker("kalman"), ValidationError);
    EXPECT_EQ(expand_trackers({"both"}, MeasurementKind::grid),
              (std::vector<TrackerKind>{TrackerKind::gdpf_grid, TrackerKind::nn}));
    EXPECT_EQ(gdpf_for(MeasurementKind::bbox), TrackerKind::gdpf_bbox);
}

TEST(Pipeline, CrossingWithBothTrackers) {
    const fs::path out = scratch("pipeline_both");
    const PipelineConfig c = pipeline_config_from(parse("[scenario]\npreset = crossing3\nseed = 7\n"));
    const PipelineResult r = run_pipeline(c, out);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0].tracker, "gdpf-bbox");
    EXPECT_EQ(r.rows[1].tracker, "nn");

    const std::string est = slurp(out / "gdpf-bbox" / "tracked_objects.csv");
    EXPECT_EQ(est.substr(0, est.find('\n')), "frame,id,x,y");
    EXPECT_TRUE(fs::exists(out / "nn" / "tracked_objects.csv"));
    EXPECT_TRUE(fs::exists(out / "gdpf-bbox" / "eval.csv"));
    EXPECT_TRUE(fs::exists(out / "scenario" / "measurements.csv"));

    const std::string summary = slurp(out / "summary.txt");
    std::size_t lines = 0;
    for (std::size_t p = summary.find("result."); p != std::string::npos; p = summary.find("result.", p + 1)) ++lines;
    EXPECT_EQ(lines, 2u);
    EXPECT_GT(r.rows[0].eval.mean_object_count, 0.0);
    EXPECT_GT(r.rows[0].eval.mean_frame_time, 0.0);
    fs::remove_all(out);
}

TEST(Pipeline, LoadsScenarioDirectory) {
    const fs::path base = scratch("pipeline_load");
    save_scenario(generate_scenario(preset("parallel3"), 2), base / "sc");
    {
        std::ofstream cfg(base / "run.ini");
        cfg << "[scenario]\npath = sc\n[pipeline]\ntracker = gdpf-bbox\n";
    }
    const PipelineResult r = run_pipeline(load_pipeline_config(base / "run.ini"), base / "out");
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.scenario, "parallel3");
    fs::remove_all(base);
}

TEST(Pipeline, MissingScenarioNamesPath) {
    const fs::path base = scratch("pipeline_missing");
    const PipelineConfig c = pipeline_config_from(parse("[scenario]\npath = nowhere\n"), base);
    const std::string msg = error_of([&] { run_pipeline(c, base / "out"); });
    EXPECT_NE(msg.find((base / "nowhere").string()), std::string::npos) << msg;
    fs::remove_all(base);
}

TEST(Pipeline, GridAndPointVariantsRun) {
    for (auto [kind, tracker] : {std::pair{MeasurementKind::grid, TrackerKind::gdpf_grid},
                                 std::pair{MeasurementKind::point, TrackerKind::gdpf_point}}) {
        ScenarioSpec spec = preset("crossing3");
        spec.kind = kind;
        const Scenario sc = generate_scenario(spec, 3);
        const TrackerRun run = run_tracker(sc, TrackerConfig{}, tracker);
        ASSERT_EQ(run.estimates.size(), 100u);
        EXPECT_NO_THROW(evaluate(sc.truths, run.estimates, sc.meta.gt_id));
    }
}
