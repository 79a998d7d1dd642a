#include "gdpf/harness/config.hpp"

#include "gdpf/errors.hpp"
#include "gdpf/harness/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace gdpf::harness {

KeyValueFile KeyValueFile::parse(std::istream& in, std::string source) {
    KeyValueFile file;
    file.source_ = std::move(source);
    std::string section;
    file.sections_[section];
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::string_view line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = file.source_ + ":" + std::to_string(number);
        if (line.front() == '[') {
            if (line.back() != ']') throw IoError(where + ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            file.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw IoError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw IoError(where + ": empty key");
        auto& entries = file.sections_[section];
        if (entries.contains(key)) throw IoError(where + ": duplicate key '" + key + "'");
        entries[key] = {std::string(trim(line.substr(eq + 1))), number};
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    return parse(in, path.string());
}

std::vector<std::string> KeyValueFile::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, entries] : sections_) out.push_back(name);
    return out;
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

std::string KeyValueFile::where(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? source_ + ":" + std::to_string(e->line) : source_;
}

std::optional<std::string> KeyValueFile::text(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return e->value;
}

std::optional<double> KeyValueFile::number(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return parse_number(e->value, where(section, key));
}

std::optional<long long> KeyValueFile::integer(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return parse_integer(e->value, where(section, key));
}

std::optional<bool> KeyValueFile::boolean(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "1" || e->value == "on" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "off" || e->value == "no") return false;
    throw IoError(where(section, key) + ": expected a boolean, got '" + e->value + "'");
}

std::optional<std::vector<double>> KeyValueFile::numbers(const std::string& section, const std::string& key,
                                                         std::size_t count) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    const auto parts = split(e->value, ',');
    if (parts.size() != count) {
        throw IoError(where(section, key) + ": expected " + std::to_string(count) + " comma-separated numbers");
    }
    std::vector<double> out;
    for (auto p : parts) out.push_back(parse_number(p, where(section, key)));
    return out;
}

void KeyValueFile::require_known(const std::string& section, const std::set<std::string>& allowed) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return;
    for (const auto& [key, entry] : s->second) {
        if (!allowed.contains(key)) {
            throw IoError(source_ + ":" + std::to_string(entry.line) + ": unknown key '" + key + "' in [" + section +
                          "]");
        }
    }
}

namespace {

template <typename T>
void assign(T& target, const std::optional<T>& value) {
    if (value) target = *value;
}

void assign_int(int& target, const std::optional<long long>& value) {
    if (value) target = static_cast<int>(*value);
}

}  // namespace

TrackerConfig tracker_config_from(const KeyValueFile& file) {
    file.require_known("filter", {"alpha", "gamma", "a", "b", "survival_prob", "assoc_gain", "count_decay",
                                  "birth_existence", "new_cluster_likelihood", "link_scale", "link_floor",
                                  "use_crp_factor", "birth_velocity_max"});
    file.require_known("model", {"dt", "process_noise_scale", "meas_noise_std", "meas_noise_cov"});
    file.require_known("output", {"min_existence", "speed_threshold"});
    file.require_known("baseline", {"gate_radius", "max_misses", "min_hits"});

    TrackerConfig cfg;
    Hyperparameters& h = cfg.hyper;
    assign(h.alpha, file.number("filter", "alpha"));
    assign(h.gamma, file.number("filter", "gamma"));
    assign(h.a, file.number("filter", "a"));
    assign(h.b, file.number("filter", "b"));
    assign(h.survival_prob, file.number("filter", "survival_prob"));
    assign(h.assoc_gain, file.number("filter", "assoc_gain"));
    assign(h.count_decay, file.number("filter", "count_decay"));
    assign(h.birth_existence, file.number("filter", "birth_existence"));
    assign(h.new_cluster_likelihood, file.number("filter", "new_cluster_likelihood"));
    assign(h.link_scale, file.number("filter", "link_scale"));
    assign(h.link_floor, file.number("filter", "link_floor"));
    assign(h.use_crp_factor, file.boolean("filter", "use_crp_factor"));
    assign(h.birth_velocity_max, file.number("filter", "birth_velocity_max"));

    if (auto dt = file.number("model", "dt")) {
        h.dt = *dt;
        cfg.dt_set = true;
    }
    assign(h.process_noise_scale, file.number("model", "process_noise_scale"));
    if (file.find("model", "meas_noise_std") && file.find("model", "meas_noise_cov")) {
        throw IoError(file.where("model", "meas_noise_cov") + ": set meas_noise_std or meas_noise_cov, not both");
    }
    if (auto std_dev = file.number("model", "meas_noise_std")) {
        h.meas_noise_cov = Eigen::Matrix2d::Identity() * (*std_dev * *std_dev);
    }
    if (auto cov = file.numbers("model", "meas_noise_cov", 3)) {
        h.meas_noise_cov << (*cov)[0], (*cov)[1], (*cov)[1], (*cov)[2];
    }

    assign(cfg.output.min_existence, file.number("output", "min_existence"));
    assign(cfg.output.speed_threshold, file.number("output", "speed_threshold"));

    cfg.nn.process_noise_scale = h.process_noise_scale;
    cfg.nn.meas_noise = h.meas_noise_cov;
    cfg.nn.birth_velocity_max = h.birth_velocity_max;
    assign(cfg.nn.gate_radius, file.number("baseline", "gate_radius"));
    assign_int(cfg.nn.max_misses, file.integer("baseline", "max_misses"));
    assign_int(cfg.nn.min_hits, file.integer("baseline", "min_hits"));

    try {
        validate_hyperparameters(h);
    } catch (const ValidationError& e) {
        throw ValidationError(file.source() + ": " + e.what());
    }
    return cfg;
}

ScenarioSpec scenario_spec_from(const KeyValueFile& file) {
    const std::string s = "scenario";
    file.require_known(s, {"preset", "name", "frames", "dt", "noise_std", "clutter_rate", "det_prob", "fov",
                           "sensor", "kind", "cell_size", "split_prob", "gt_id", "seed", "path"});

    ScenarioSpec spec;
    if (auto name = file.text(s, "preset")) {
        try {
            spec = preset(*name);
        } catch (const ValidationError& e) {
            throw ValidationError(file.where(s, "preset") + ": " + e.what());
        }
    }
    assign(spec.name, file.text(s, "name"));
    assign_int(spec.frames, file.integer(s, "frames"));
    assign(spec.dt, file.number(s, "dt"));
    assign(spec.noise_std, file.number(s, "noise_std"));
    assign(spec.clutter_rate, file.number(s, "clutter_rate"));
    assign(spec.det_prob, file.number(s, "det_prob"));
    if (auto fov = file.numbers(s, "fov", 4)) spec.fov = {(*fov)[0], (*fov)[1], (*fov)[2], (*fov)[3]};
    if (auto sensor = file.numbers(s, "sensor", 2)) spec.sensor = {(*sensor)[0], (*sensor)[1]};
    if (auto kind = file.text(s, "kind")) {
        try {
            spec.kind = parse_measurement_kind(*kind);
        } catch (const ValidationError& e) {
            throw ValidationError(file.where(s, "kind") + ": " + e.what());
        }
    }
    assign(spec.cell_size, file.number(s, "cell_size"));
    assign(spec.split_prob, file.number(s, "split_prob"));
    assign_int(spec.gt_id, file.integer(s, "gt_id"));

    std::vector<TargetSpec> targets;
    for (const auto& section : file.sections()) {
        if (!section.starts_with("target.")) continue;
        file.require_known(section, {"x", "y", "vx", "vy", "half_x", "half_y", "start", "end"});
        TargetSpec t;
        t.id = static_cast<int>(parse_integer(section.substr(7), file.source() + ": [" + section + "]"));
        assign(t.position.x(), file.number(section, "x"));
        assign(t.position.y(), file.number(section, "y"));
        assign(t.velocity.x(), file.number(section, "vx"));
        assign(t.velocity.y(), file.number(section, "vy"));
        assign(t.half_x, file.number(section, "half_x"));
        assign(t.half_y, file.number(section, "half_y"));
        assign_int(t.start, file.integer(section, "start"));
        assign_int(t.end, file.integer(section, "end"));
        targets.push_back(t);
    }
    if (!targets.empty()) {
        std::sort(targets.begin(), targets.end(), [](const auto& l, const auto& r) { return l.id < r.id; });
        spec.targets = std::move(targets);
    }

    try {
        validate(spec);
    } catch (const ValidationError& e) {
        throw ValidationError(file.source() + ": " + e.what());
    }
    return spec;
}

PipelineConfig pipeline_config_from(const KeyValueFile& file, const std::filesystem::path& base_dir) {
    file.require_known("pipeline", {"tracker"});
    for (const auto& section : file.sections()) {
        static const std::set<std::string> known{"", "scenario", "pipeline", "filter", "model", "output", "baseline"};
        if (!known.contains(section) && !section.starts_with("target.")) {
            throw IoError(file.source() + ": unknown section [" + section + "]");
        }
    }

    PipelineConfig cfg;
    if (auto path = file.text("scenario", "path")) {
        std::filesystem::path p(*path);
        cfg.scenario_dir = p.is_relative() ? base_dir / p : p;
    }
    const auto sections = file.sections();
    const bool any_target = std::any_of(sections.begin(), sections.end(),
                                        [](const std::string& s) { return s.starts_with("target."); });
    if (!cfg.scenario_dir && !file.find("scenario", "preset") && !any_target) {
        throw ValidationError(file.source() + ": [scenario] needs 'path', 'preset' or [target.<id>] sections");
    }
    if (!cfg.scenario_dir) cfg.spec = scenario_spec_from(file);
    if (auto seed = file.text("scenario", "seed")) {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(seed->data(), seed->data() + seed->size(), value);
        if (ec != std::errc{} || ptr != seed->data() + seed->size()) {
            throw IoError(file.where("scenario", "seed") + ": expected an unsigned integer seed");
        }
        cfg.seed = value;
    }

    const std::string trackers = file.text("pipeline", "tracker").value_or("both");
    for (auto name : split(trackers, ',')) {
        if (!name.empty()) cfg.trackers.emplace_back(name);
    }
    if (cfg.trackers.empty()) throw ValidationError(file.where("pipeline", "tracker") + ": no tracker selected");

    cfg.tracker = tracker_config_from(file);
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return pipeline_config_from(KeyValueFile::load(path), path.parent_path());
}

}  // namespace gdpf::harness
