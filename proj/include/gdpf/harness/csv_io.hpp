#pragma once

#include "gdpf/harness/estimates.hpp"
#include "gdpf/harness/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gdpf::harness {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Parses a finite double; `where` prefixes the error message (e.g. "file.csv:3").
double parse_number(std::string_view text, const std::string& where);
long long parse_integer(std::string_view text, const std::string& where);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view text);

// frame,id,x,y
void write_estimates(std::ostream& out, const EstimateFrames& frames);
EstimateFrames read_estimates(std::istream& in, const std::string& source);

// frame,id,x,y,vx,vy
void write_truth(std::ostream& out, const std::vector<std::vector<TruthState>>& truths);
std::vector<std::vector<TruthState>> read_truth(std::istream& in, const std::string& source);

// frame,x,y  |  frame,x,y,x_half,y_half,heading  |  frame,x,y,row,col
void write_measurements(std::ostream& out, const std::vector<std::vector<Measurement>>& frames,
                        MeasurementKind kind);
std::vector<std::vector<Measurement>> read_measurements(std::istream& in, const std::string& source,
                                                        MeasurementKind& kind_out);

/// Scenario metadata as "key: value" lines.
void write_meta(std::ostream& out, const Scenario& sc);

/// Writes scenario.txt, truth.csv and measurements.csv into `dir` (created if missing).
void save_scenario(const Scenario& sc, const std::filesystem::path& dir);
Scenario load_scenario(const std::filesystem::path& dir);

/// All three scenario files concatenated, for byte-level comparisons.
std::string serialize_scenario(const Scenario& sc);

void write_estimates_file(const std::filesystem::path& path, const EstimateFrames& frames);
EstimateFrames read_estimates_file(const std::filesystem::path& path);
std::vector<std::vector<TruthState>> read_truth_file(const std::filesystem::path& path);

/// Writes text to a file, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gdpf::harness
