#include "gdpf/harness/csv_io.hpp"

#include "gdpf/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gdpf::harness {

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw NumericError("cannot format number");
    return std::string(buf.data(), end);
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const auto pos = line.find(sep, begin);
        out.push_back(trim(line.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin)));
        if (pos == std::string_view::npos) break;
        begin = pos + 1;
    }
    return out;
}

double parse_number(std::string_view text, const std::string& where) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw IoError(where + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text, const std::string& where) {
    text = trim(text);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw IoError(where + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

namespace {

std::string at(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

/// Reads a CSV with a fixed header. Calls `row(fields, where)` for each non-empty line.
template <typename RowFn>
void read_csv(std::istream& in, const std::string& source, std::string_view expected_header, RowFn row) {
    std::string line;
    if (!std::getline(in, line)) throw IoError(source + ": empty file, expected header '" + std::string(expected_header) + "'");
    if (trim(line) != expected_header) {
        throw IoError(at(source, 1) + ": expected header '" + std::string(expected_header) + "', got '" +
                      std::string(trim(line)) + "'");
    }
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        const auto columns = std::count(expected_header.begin(), expected_header.end(), ',') + 1;
        const std::string where = at(source, number);
        if (static_cast<long>(fields.size()) != columns) {
            throw IoError(where + ": expected " + std::to_string(columns) + " fields, got " +
                          std::to_string(fields.size()));
        }
        row(fields, where);
    }
}

int parse_frame(std::string_view text, const std::string& where) {
    const auto f = parse_integer(text, where);
    if (f < 0) throw IoError(where + ": frame must be >= 0");
    return static_cast<int>(f);
}

template <typename T>
void put(std::vector<std::vector<T>>& frames, int frame, T value) {
    if (static_cast<std::size_t>(frame) >= frames.size()) frames.resize(static_cast<std::size_t>(frame) + 1);
    frames[static_cast<std::size_t>(frame)].push_back(std::move(value));
}

constexpr std::string_view kEstimateHeader = "frame,id,x,y";
constexpr std::string_view kTruthHeader = "frame,id,x,y,vx,vy";
constexpr std::string_view kPointHeader = "frame,x,y";
constexpr std::string_view kBoxHeader = "frame,x,y,x_half,y_half,heading";
constexpr std::string_view kGridHeader = "frame,x,y,row,col";

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

void write_estimates(std::ostream& out, const EstimateFrames& frames) {
    out << kEstimateHeader << '\n';
    for (std::size_t f = 0; f < frames.size(); ++f) {
        for (const auto& e : frames[f]) {
            out << f << ',' << e.id << ',' << format_number(e.position.x()) << ',' << format_number(e.position.y())
                << '\n';
        }
    }
}

EstimateFrames read_estimates(std::istream& in, const std::string& source) {
    EstimateFrames frames;
    read_csv(in, source, kEstimateHeader, [&](const auto& f, const std::string& where) {
        EstimateRow row;
        row.id = parse_integer(f[1], where);
        row.position = {parse_number(f[2], where), parse_number(f[3], where)};
        put(frames, parse_frame(f[0], where), row);
    });
    return frames;
}

void write_truth(std::ostream& out, const std::vector<std::vector<TruthState>>& truths) {
    out << kTruthHeader << '\n';
    for (std::size_t f = 0; f < truths.size(); ++f) {
        for (const auto& t : truths[f]) {
            out << f << ',' << t.id << ',' << format_number(t.position.x()) << ',' << format_number(t.position.y())
                << ',' << format_number(t.velocity.x()) << ',' << format_number(t.velocity.y()) << '\n';
        }
    }
}

std::vector<std::vector<TruthState>> read_truth(std::istream& in, const std::string& source) {
    std::vector<std::vector<TruthState>> truths;
    read_csv(in, source, kTruthHeader, [&](const auto& f, const std::string& where) {
        TruthState t;
        t.id = static_cast<int>(parse_integer(f[1], where));
        t.position = {parse_number(f[2], where), parse_number(f[3], where)};
        t.velocity = {parse_number(f[4], where), parse_number(f[5], where)};
        put(truths, parse_frame(f[0], where), t);
    });
    return truths;
}

void write_measurements(std::ostream& out, const std::vector<std::vector<Measurement>>& frames,
                        MeasurementKind kind) {
    switch (kind) {
        case MeasurementKind::point: out << kPointHeader << '\n'; break;
        case MeasurementKind::bbox: out << kBoxHeader << '\n'; break;
        case MeasurementKind::grid: out << kGridHeader << '\n'; break;
    }
    for (const auto& frame : frames) {
        for (const auto& m : frame) {
            out << m.frame << ',' << format_number(m.position.x()) << ',' << format_number(m.position.y());
            if (kind == MeasurementKind::bbox) {
                const BoxExtent e = m.extent.value_or(BoxExtent{});
                out << ',' << format_number(e.half_x) << ',' << format_number(e.half_y) << ','
                    << format_number(e.heading);
            } else if (kind == MeasurementKind::grid) {
                const GridCell c = m.cell.value_or(GridCell{});
                out << ',' << c.row << ',' << c.col;
            }
            out << '\n';
        }
    }
}

std::vector<std::vector<Measurement>> read_measurements(std::istream& in, const std::string& source,
                                                        MeasurementKind& kind_out) {
    std::string header;
    if (!std::getline(in, header)) throw IoError(source + ": empty file, expected a measurement header");
    const auto h = trim(header);
    std::string_view expected;
    if (h == kPointHeader) {
        kind_out = MeasurementKind::point;
        expected = kPointHeader;
    } else if (h == kBoxHeader) {
        kind_out = MeasurementKind::bbox;
        expected = kBoxHeader;
    } else if (h == kGridHeader) {
        kind_out = MeasurementKind::grid;
        expected = kGridHeader;
    } else {
        throw IoError(source + ":1: unrecognized measurement header '" + std::string(h) + "'");
    }

    // Re-feed the header to the shared reader.
    std::stringstream rest;
    rest << h << '\n' << in.rdbuf();
    std::vector<std::vector<Measurement>> frames;
    const MeasurementKind kind = kind_out;
    read_csv(rest, source, expected, [&](const auto& f, const std::string& where) {
        Measurement m;
        m.frame = parse_frame(f[0], where);
        m.position = {parse_number(f[1], where), parse_number(f[2], where)};
        if (kind == MeasurementKind::bbox) {
            m.extent = BoxExtent{parse_number(f[3], where), parse_number(f[4], where), parse_number(f[5], where)};
        } else if (kind == MeasurementKind::grid) {
            m.cell = GridCell{static_cast<int>(parse_integer(f[3], where)), static_cast<int>(parse_integer(f[4], where))};
        }
        put(frames, m.frame, m);
    });
    return frames;
}

void write_meta(std::ostream& out, const Scenario& sc) {
    const auto& m = sc.meta;
    out << "name: " << m.name << '\n'
        << "frames: " << sc.frames << '\n'
        << "dt: " << format_number(sc.dt) << '\n'
        << "seed: " << sc.seed << '\n'
        << "noise_std: " << format_number(m.noise_std) << '\n'
        << "clutter_rate: " << format_number(m.clutter_rate) << '\n'
        << "det_prob: " << format_number(m.det_prob) << '\n'
        << "fov: " << format_number(m.fov.x_min) << ',' << format_number(m.fov.x_max) << ','
        << format_number(m.fov.y_min) << ',' << format_number(m.fov.y_max) << '\n'
        << "kind: " << to_string(m.kind) << '\n'
        << "cell_size: " << format_number(m.cell_size) << '\n'
        << "gt_id: " << m.gt_id << '\n';
}

namespace {

Scenario read_meta(std::istream& in, const std::string& source) {
    std::map<std::string, std::pair<std::string, std::string>> values;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw IoError(at(source, number) + ": expected 'key: value'");
        values[std::string(trim(std::string_view(line).substr(0, colon)))] = {
            std::string(trim(std::string_view(line).substr(colon + 1))), at(source, number)};
    }
    auto get = [&](const std::string& key) -> const std::pair<std::string, std::string>& {
        auto it = values.find(key);
        if (it == values.end()) throw IoError(source + ": missing key '" + key + "'");
        return it->second;
    };

    Scenario sc;
    sc.meta.name = get("name").first;
    sc.frames = static_cast<int>(parse_integer(get("frames").first, get("frames").second));
    sc.dt = parse_number(get("dt").first, get("dt").second);
    {
        const auto& [text, where] = get("seed");
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc{} || ptr != text.data() + text.size()) throw IoError(where + ": bad seed '" + text + "'");
        sc.seed = seed;
    }
    sc.meta.noise_std = parse_number(get("noise_std").first, get("noise_std").second);
    sc.meta.clutter_rate = parse_number(get("clutter_rate").first, get("clutter_rate").second);
    sc.meta.det_prob = parse_number(get("det_prob").first, get("det_prob").second);
    {
        const auto& [text, where] = get("fov");
        const auto parts = split(text, ',');
        if (parts.size() != 4) throw IoError(where + ": fov needs x_min,x_max,y_min,y_max");
        sc.meta.fov = {parse_number(parts[0], where), parse_number(parts[1], where), parse_number(parts[2], where),
                       parse_number(parts[3], where)};
    }
    try {
        sc.meta.kind = parse_measurement_kind(get("kind").first);
    } catch (const ValidationError& e) {
        throw IoError(get("kind").second + ": " + e.what());
    }
    sc.meta.cell_size = parse_number(get("cell_size").first, get("cell_size").second);
    sc.meta.gt_id = static_cast<int>(parse_integer(get("gt_id").first, get("gt_id").second));
    if (sc.frames <= 0) throw IoError(get("frames").second + ": frames must be > 0");
    return sc;
}

}  // namespace

void save_scenario(const Scenario& sc, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

    std::ostringstream meta;
    write_meta(meta, sc);
    write_text_file(dir / "scenario.txt", meta.str());
    std::ostringstream truth;
    write_truth(truth, sc.truths);
    write_text_file(dir / "truth.csv", truth.str());
    std::ostringstream meas;
    write_measurements(meas, sc.measurements, sc.meta.kind);
    write_text_file(dir / "measurements.csv", meas.str());
}

Scenario load_scenario(const std::filesystem::path& dir) {
    const auto meta_path = dir / "scenario.txt";
    auto meta_in = open_input(meta_path);
    Scenario sc = read_meta(meta_in, meta_path.string());

    const auto truth_path = dir / "truth.csv";
    auto truth_in = open_input(truth_path);
    sc.truths = read_truth(truth_in, truth_path.string());

    const auto meas_path = dir / "measurements.csv";
    auto meas_in = open_input(meas_path);
    MeasurementKind kind = sc.meta.kind;
    sc.measurements = read_measurements(meas_in, meas_path.string(), kind);
    if (kind != sc.meta.kind) {
        throw IoError(meas_path.string() + ": measurement columns do not match kind '" +
                      std::string(to_string(sc.meta.kind)) + "'");
    }

    const auto frames = static_cast<std::size_t>(sc.frames);
    if (sc.truths.size() > frames || sc.measurements.size() > frames) {
        throw IoError(dir.string() + ": data extends beyond the declared frame count");
    }
    sc.truths.resize(frames);
    sc.measurements.resize(frames);
    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    write_meta(out, sc);
    write_truth(out, sc.truths);
    write_measurements(out, sc.measurements, sc.meta.kind);
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_estimates_file(const std::filesystem::path& path, const EstimateFrames& frames) {
    std::ostringstream out;
    write_estimates(out, frames);
    write_text_file(path, out.str());
}

EstimateFrames read_estimates_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_estimates(in, path.string());
}

std::vector<std::vector<TruthState>> read_truth_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_truth(in, path.string());
}

}  // namespace gdpf::harness
