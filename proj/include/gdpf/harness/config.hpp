#pragma once

#include "gdpf/harness/baseline.hpp"
#include "gdpf/harness/scenario.hpp"
#include "gdpf/model.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gdpf::harness {

/// Flat INI-style file: "[section]" headers, "key = value" lines, '#' or ';' comments.
/// Keys before the first header belong to the section "".
class KeyValueFile {
public:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };

    static KeyValueFile parse(std::istream& in, std::string source);
    static KeyValueFile load(const std::filesystem::path& path);

    [[nodiscard]] const std::string& source() const { return source_; }
    [[nodiscard]] bool has_section(const std::string& section) const { return sections_.contains(section); }
    [[nodiscard]] std::vector<std::string> sections() const;
    [[nodiscard]] const Entry* find(const std::string& section, const std::string& key) const;

    [[nodiscard]] std::optional<std::string> text(const std::string& section, const std::string& key) const;
    [[nodiscard]] std::optional<double> number(const std::string& section, const std::string& key) const;
    [[nodiscard]] std::optional<long long> integer(const std::string& section, const std::string& key) const;
    [[nodiscard]] std::optional<bool> boolean(const std::string& section, const std::string& key) const;
    /// Comma-separated numbers; throws if the count differs from `count`.
    [[nodiscard]] std::optional<std::vector<double>> numbers(const std::string& section, const std::string& key,
                                                             std::size_t count) const;

    /// "file:line" for a key, or just the file name when the key is absent.
    [[nodiscard]] std::string where(const std::string& section, const std::string& key) const;

    /// Throws IoError naming the first key of `section` that is not in `allowed`.
    void require_known(const std::string& section, const std::set<std::string>& allowed) const;

private:
    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

struct OutputOptions {
    /// Clusters below this existence are not written to the estimate stream.
    double min_existence = 0.4;
    double speed_threshold = 0.5;
};

struct TrackerConfig {
    Hyperparameters hyper;
    /// When false the scenario's frame interval overrides hyper.dt.
    bool dt_set = false;
    NnConfig nn;
    OutputOptions output;
};

/// Reads [filter], [model], [output] and [baseline]. Validates the hyperparameters.
TrackerConfig tracker_config_from(const KeyValueFile& file);

/// Reads the [scenario] section and any [target.<id>] sections. A "preset" key seeds the spec,
/// later keys override it, and target sections replace the preset's targets.
ScenarioSpec scenario_spec_from(const KeyValueFile& file);

struct PipelineConfig {
    ScenarioSpec spec;
    /// Load this scenario directory instead of generating one.
    std::optional<std::filesystem::path> scenario_dir;
    std::uint64_t seed = 1;
    std::vector<std::string> trackers;
    TrackerConfig tracker;
};

PipelineConfig pipeline_config_from(const KeyValueFile& file, const std::filesystem::path& base_dir = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

}  // namespace gdpf::harness
