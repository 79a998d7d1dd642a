#pragma once

#include "gdpf/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gdpf::harness {

enum class MeasurementKind { point, bbox, grid };

std::string_view to_string(MeasurementKind kind);
MeasurementKind parse_measurement_kind(std::string_view text);

struct FieldOfView {
    double x_min = -20.0;
    double x_max = 20.0;
    double y_min = -20.0;
    double y_max = 20.0;

    [[nodiscard]] bool contains(const Eigen::Vector2d& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }
    [[nodiscard]] double area() const { return (x_max - x_min) * (y_max - y_min); }
};

/// A scripted constant-velocity target, present in frames [start, end] while inside the field of view.
struct TargetSpec {
    int id = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
    double half_x = 2.25;
    double half_y = 0.9;
    int start = 0;
    int end = -1;  ///< -1: until the last frame.
};

struct ScenarioSpec {
    std::string name = "custom";
    int frames = 100;
    double dt = 0.1;
    double noise_std = 0.2;
    double clutter_rate = 0.0;
    double det_prob = 1.0;
    FieldOfView fov;
    Eigen::Vector2d sensor = Eigen::Vector2d::Zero();
    MeasurementKind kind = MeasurementKind::bbox;
    double cell_size = 0.5;
    /// Probability that a box detection is over-segmented into two halves.
    double split_prob = 0.0;
    int gt_id = 0;
    std::vector<TargetSpec> targets;
};

/// Throws ValidationError on non-positive counts, negative noise or det_prob outside (0,1].
void validate(const ScenarioSpec& spec);

/// Named presets: crossing3, parallel3, birth_death. Throws ValidationError for unknown names.
ScenarioSpec preset(std::string_view name);

/// `objects` targets on a jittered lattice with random headings; over-segmentation
/// brings the detection count to roughly 1.25x the object count.
ScenarioSpec bench_spec(int objects, int frames, std::uint64_t seed);

struct TruthState {
    int id = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
};

struct ScenarioMeta {
    std::string name;
    double noise_std = 0.0;
    double clutter_rate = 0.0;
    double det_prob = 1.0;
    FieldOfView fov;
    MeasurementKind kind = MeasurementKind::bbox;
    double cell_size = 0.5;
    int gt_id = 0;
};

/// Clutter origin marker in Scenario::origins.
inline constexpr int kClutter = -1;

struct Scenario {
    int frames = 0;
    double dt = 0.1;
    std::uint64_t seed = 0;
    ScenarioMeta meta;
    std::vector<std::vector<TruthState>> truths;
    /// Per frame, sorted by range from the sensor (nearest first).
    std::vector<std::vector<Measurement>> measurements;
    /// Truth id (or kClutter) of each measurement. Kept in memory only; empty after loading from disk.
    std::vector<std::vector<int>> origins;
};

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace gdpf::harness
