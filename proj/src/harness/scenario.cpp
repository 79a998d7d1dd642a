#include "gdpf/harness/scenario.hpp"

#include "gdpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <utility>

namespace gdpf::harness {

std::string_view to_string(MeasurementKind kind) {
    switch (kind) {
        case MeasurementKind::point: return "point";
        case MeasurementKind::bbox: return "bbox";
        case MeasurementKind::grid: return "grid";
    }
    return "unknown";
}

MeasurementKind parse_measurement_kind(std::string_view text) {
    if (text == "point") return MeasurementKind::point;
    if (text == "bbox") return MeasurementKind::bbox;
    if (text == "grid") return MeasurementKind::grid;
    throw ValidationError("unknown measurement kind '" + std::string(text) + "' (expected point, bbox or grid)");
}

void validate(const ScenarioSpec& spec) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ValidationError(msg);
    };
    require(spec.frames > 0, "frames must be > 0");
    require(std::isfinite(spec.dt) && spec.dt > 0.0, "dt must be > 0");
    require(std::isfinite(spec.noise_std) && spec.noise_std >= 0.0, "noise_std must be >= 0");
    require(std::isfinite(spec.clutter_rate) && spec.clutter_rate >= 0.0, "clutter_rate must be >= 0");
    require(spec.det_prob > 0.0 && spec.det_prob <= 1.0, "det_prob must be in (0,1]");
    require(spec.fov.x_max > spec.fov.x_min && spec.fov.y_max > spec.fov.y_min, "field of view must be non-empty");
    require(std::isfinite(spec.cell_size) && spec.cell_size > 0.0, "cell_size must be > 0");
    require(spec.split_prob >= 0.0 && spec.split_prob <= 1.0, "split_prob must be in [0,1]");
    std::set<int> ids;
    for (const auto& t : spec.targets) {
        require(ids.insert(t.id).second, "target ids must be unique");
        require(t.id >= 0, "target ids must be >= 0");
        require(t.position.allFinite() && t.velocity.allFinite(), "target state must be finite");
        require(t.half_x >= 0.0 && t.half_y >= 0.0, "target extent must be >= 0");
        require(t.start >= 0 && (t.end < 0 || t.end >= t.start), "target lifetime must satisfy 0 <= start <= end");
    }
}

namespace {

TargetSpec target(int id, double x, double y, double vx, double vy) {
    TargetSpec t;
    t.id = id;
    t.position = {x, y};
    t.velocity = {vx, vy};
    return t;
}

}  // namespace

ScenarioSpec preset(std::string_view name) {
    ScenarioSpec spec;
    spec.name = std::string(name);
    if (name == "crossing3") {
        // Each pair of paths crosses once; the targets reach the crossings at different
        // times and never come closer than about 4.8 m to each other.
        spec.noise_std = 0.2;
        spec.det_prob = 0.95;
        spec.clutter_rate = 2.0;
        spec.gt_id = 0;
        spec.targets = {target(0, -12.0, -2.0, 2.4, 0.4), target(1, -5.0, -12.0, -0.7, 2.3),
                        target(2, 12.0, 3.0, -2.6, -1.9)};
    } else if (name == "parallel3") {
        spec.noise_std = 0.2;
        spec.det_prob = 0.95;
        spec.clutter_rate = 1.0;
        spec.gt_id = 1;
        spec.targets = {target(0, -12.0, -3.5, 2.5, 0.0), target(1, -12.0, 0.0, 2.5, 0.0),
                        target(2, -12.0, 3.5, 2.5, 0.0)};
    } else if (name == "birth_death") {
        spec.frames = 200;
        spec.noise_std = 0.2;
        spec.gt_id = 0;
        spec.fov = {-20.0, 40.0, -20.0, 20.0};
        spec.targets = {target(0, -10.0, 4.0, 2.0, 0.0), target(1, -10.0, -6.0, 2.0, 0.25)};
        spec.targets[0].end = 49;
    } else {
        throw ValidationError("unknown scenario preset '" + std::string(name) + "'");
    }
    return spec;
}

ScenarioSpec bench_spec(int objects, int frames, std::uint64_t seed) {
    if (objects <= 0 || frames <= 0) throw ValidationError("bench needs objects > 0 and frames > 0");
    ScenarioSpec spec;
    spec.name = "bench";
    spec.frames = frames;
    spec.noise_std = 0.2;
    spec.det_prob = 0.95;
    spec.split_prob = 0.3;
    spec.kind = MeasurementKind::bbox;

    constexpr double spacing = 12.0;
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(objects))));
    const int rows = (objects + cols - 1) / cols;
    const double margin = 40.0;
    spec.fov = {-margin, cols * spacing + margin, -margin, rows * spacing + margin};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-2.0, 2.0);
    std::uniform_real_distribution<double> speed(0.0, 3.0);
    std::uniform_real_distribution<double> heading(-std::numbers::pi, std::numbers::pi);
    for (int k = 0; k < objects; ++k) {
        const double x = (k % cols) * spacing + jitter(rng);
        const double y = (k / cols) * spacing + jitter(rng);
        const double v = speed(rng);
        const double h = heading(rng);
        spec.targets.push_back(target(k, x, y, v * std::cos(h), v * std::sin(h)));
    }
    return spec;
}

namespace {

struct Emitted {
    Measurement m;
    int origin = kClutter;
};

GridCell cell_of(const Eigen::Vector2d& p, double cell_size) {
    return {static_cast<int>(std::floor(p.y() / cell_size)), static_cast<int>(std::floor(p.x() / cell_size))};
}

Eigen::Vector2d cell_center(const GridCell& c, double cell_size) {
    return {(c.col + 0.5) * cell_size, (c.row + 0.5) * cell_size};
}

double heading_of(const Eigen::Vector2d& v) { return v.squaredNorm() > 0.0 ? std::atan2(v.y(), v.x()) : 0.0; }

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
    validate(spec);

    Scenario sc;
    sc.frames = spec.frames;
    sc.dt = spec.dt;
    sc.seed = seed;
    sc.meta = {spec.name,     spec.noise_std, spec.clutter_rate, spec.det_prob, spec.fov,
               spec.kind,     spec.cell_size, spec.gt_id};
    sc.truths.resize(spec.frames);
    sc.measurements.resize(spec.frames);
    sc.origins.resize(spec.frames);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> ux(spec.fov.x_min, spec.fov.x_max);
    std::uniform_real_distribution<double> uy(spec.fov.y_min, spec.fov.y_max);
    std::uniform_real_distribution<double> clutter_half(0.2, 1.0);
    std::uniform_real_distribution<double> clutter_heading(-std::numbers::pi, std::numbers::pi);
    std::poisson_distribution<int> clutter_count(spec.clutter_rate > 0.0 ? spec.clutter_rate : 1.0);

    auto noisy = [&](const Eigen::Vector2d& p) {
        const double nx = normal(rng);
        const double ny = normal(rng);
        return Eigen::Vector2d(p.x() + spec.noise_std * nx, p.y() + spec.noise_std * ny);
    };

    for (int f = 0; f < spec.frames; ++f) {
        std::vector<Emitted> emitted;
        std::set<std::pair<int, int>> occupied;
        auto emit_cell = [&](const GridCell& c, int origin) {
            if (!occupied.insert({c.row, c.col}).second) return;
            Emitted e;
            e.m.frame = f;
            e.m.position = cell_center(c, spec.cell_size);
            e.m.cell = c;
            e.origin = origin;
            emitted.push_back(e);
        };

        for (const TargetSpec& t : spec.targets) {
            if (f < t.start || (t.end >= 0 && f > t.end)) continue;
            const Eigen::Vector2d pos = t.position + t.velocity * (f * spec.dt);
            if (!spec.fov.contains(pos)) continue;
            sc.truths[f].push_back({t.id, pos, t.velocity});

            if (unit(rng) >= spec.det_prob) continue;
            const double heading = heading_of(t.velocity);
            switch (spec.kind) {
                case MeasurementKind::point: {
                    Emitted e;
                    e.m.frame = f;
                    e.m.position = noisy(pos);
                    e.origin = t.id;
                    emitted.push_back(e);
                    break;
                }
                case MeasurementKind::bbox: {
                    std::vector<std::pair<Eigen::Vector2d, double>> pieces;
                    if (unit(rng) < spec.split_prob) {
                        const Eigen::Vector2d axis(std::cos(heading), std::sin(heading));
                        const double h = t.half_x / 2.0;
                        pieces = {{pos + axis * h, h}, {pos - axis * h, h}};
                    } else {
                        pieces = {{pos, t.half_x}};
                    }
                    for (const auto& [center, half_x] : pieces) {
                        Emitted e;
                        e.m.frame = f;
                        e.m.position = noisy(center);
                        e.m.extent = BoxExtent{half_x, t.half_y, heading};
                        e.origin = t.id;
                        emitted.push_back(e);
                    }
                    break;
                }
                case MeasurementKind::grid: {
                    const Eigen::Vector2d center = noisy(pos);
                    const BoxExtent box{t.half_x, t.half_y, heading};
                    const double reach = std::hypot(t.half_x, t.half_y);
                    const GridCell lo = cell_of(center - Eigen::Vector2d(reach, reach), spec.cell_size);
                    const GridCell hi = cell_of(center + Eigen::Vector2d(reach, reach), spec.cell_size);
                    const double c = std::cos(box.heading);
                    const double s = std::sin(box.heading);
                    for (int r = lo.row; r <= hi.row; ++r) {
                        for (int col = lo.col; col <= hi.col; ++col) {
                            const GridCell cell{r, col};
                            const Eigen::Vector2d d = cell_center(cell, spec.cell_size) - center;
                            const double lx = c * d.x() + s * d.y();
                            const double ly = -s * d.x() + c * d.y();
                            if (std::abs(lx) <= box.half_x && std::abs(ly) <= box.half_y) emit_cell(cell, t.id);
                        }
                    }
                    break;
                }
            }
        }

        const int n_clutter = spec.clutter_rate > 0.0 ? clutter_count(rng) : 0;
        for (int k = 0; k < n_clutter; ++k) {
            const Eigen::Vector2d p(ux(rng), uy(rng));
            if (spec.kind == MeasurementKind::grid) {
                emit_cell(cell_of(p, spec.cell_size), kClutter);
                continue;
            }
            Emitted e;
            e.m.frame = f;
            e.m.position = p;
            if (spec.kind == MeasurementKind::bbox) {
                const double hx = clutter_half(rng);
                const double hy = clutter_half(rng);
                e.m.extent = BoxExtent{hx, hy, clutter_heading(rng)};
            }
            emitted.push_back(e);
        }

        std::vector<std::size_t> order(emitted.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return (emitted[l].m.position - spec.sensor).norm() < (emitted[r].m.position - spec.sensor).norm();
        });
        for (std::size_t k : order) {
            sc.measurements[f].push_back(emitted[k].m);
            sc.origins[f].push_back(emitted[k].origin);
        }
    }
    return sc;
}

}  // namespace gdpf::harness
