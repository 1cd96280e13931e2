#pragma once

#include "placy/discovery.hpp"
#include "placy/synth.hpp"
#include "placy/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace placy {

struct CsvLoadResult {
    TimeSeriesSet data;
    std::vector<std::size_t> missing_counts; // per column
};

/// Reads a UTF-8 CSV with a header row of variable names and one row per
/// time step. Empty cells and NaN markers (nan, NA) count as missing; with
/// interpolate_missing they are filled by linear interpolation between the
/// nearest finite neighbors (nearest-value extension at the boundaries),
/// otherwise they stay NaN. A column with no finite value at all is an
/// unusable_column error.
CsvLoadResult load_csv(const std::filesystem::path& path, bool interpolate_missing = true);

/// Writes the set with %.17g cells so a reload reproduces every value exactly.
void write_csv(const std::filesystem::path& path, const TimeSeriesSet& data);

/// Graph report with the stable field set {names, alpha, window, stride,
/// max_lag, adjacency, p_values, metadata}. window/stride are null for
/// baseline graphs; diagonal p-values serialize as null.
void write_graph_json(const std::filesystem::path& path, const CausalGraph& graph);

/// d x d p-value matrix with a header row and column of names; the diagonal
/// is written as nan.
void write_pvalues_csv(const std::filesystem::path& path, const CausalGraph& graph);

/// Ground-truth sidecar for generated datasets.
void write_truth_json(const std::filesystem::path& path, const GroundTruth& truth,
                      const ScenarioSpec& spec);

std::string format_double(double value); // %.17g, shared by every CSV writer

} // namespace placy
