#include "placy/io.hpp"

#include "placy/error.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace placy {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.empty()) cells.emplace_back();
    return cells;
}

bool is_missing_marker(const std::string& cell) {
    if (cell.empty()) return true;
    std::string lower;
    lower.reserve(cell.size());
    for (char c : cell) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return lower == "nan" || lower == "na" || lower == "null";
}

void interpolate_column(std::vector<double>& column, std::size_t col_index) {
    const std::size_t n = column.size();
    std::vector<std::size_t> finite;
    for (std::size_t t = 0; t < n; ++t)
        if (std::isfinite(column[t])) finite.push_back(t);
    if (finite.empty())
        throw Error(errc::unusable_column,
                    "column " + std::to_string(col_index + 1) + " has no finite values");

    // Nearest-value extension at the boundaries, linear interpolation inside.
    for (std::size_t t = 0; t < finite.front(); ++t) column[t] = column[finite.front()];
    for (std::size_t t = finite.back() + 1; t < n; ++t) column[t] = column[finite.back()];
    for (std::size_t k = 0; k + 1 < finite.size(); ++k) {
        const std::size_t lo = finite[k];
        const std::size_t hi = finite[k + 1];
        if (hi == lo + 1) continue;
        const double step = (column[hi] - column[lo]) / static_cast<double>(hi - lo);
        for (std::size_t t = lo + 1; t < hi; ++t)
            column[t] = column[lo] + step * static_cast<double>(t - lo);
    }
}

json matrix_to_json(const CausalGraph& graph, bool booleans) {
    json rows = json::array();
    for (std::size_t i = 0; i < graph.n_vars; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < graph.n_vars; ++j) {
            if (booleans) {
                row.push_back(i == j ? false : graph.edge(i, j));
            } else if (i == j) {
                row.push_back(nullptr);
            } else {
                row.push_back(graph.p_values(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j)));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(errc::io_error, "failed writing " + path.string());
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

CsvLoadResult load_csv(const std::filesystem::path& path, bool interpolate_missing) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error(errc::parse_error, path.string() + " is empty");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3); // UTF-8 BOM
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> names;
    for (const std::string& cell : split_csv_line(line)) names.push_back(trim(cell));
    const std::size_t d = names.size();

    std::vector<std::vector<double>> columns(d);
    std::vector<std::size_t> missing(d, 0);
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != d)
            throw Error(errc::parse_error, path.string() + ":" + std::to_string(row_number) +
                                               ": expected " + std::to_string(d) +
                                               " cells, found " + std::to_string(cells.size()));
        for (std::size_t j = 0; j < d; ++j) {
            const std::string cell = trim(cells[j]);
            if (is_missing_marker(cell)) {
                columns[j].push_back(std::numeric_limits<double>::quiet_NaN());
                ++missing[j];
                continue;
            }
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw Error(errc::parse_error, path.string() + ":" + std::to_string(row_number) +
                                                   ": column " + std::to_string(j + 1) +
                                                   ": not a number: '" + cell + "'");
            if (std::isnan(value)) {
                columns[j].push_back(std::numeric_limits<double>::quiet_NaN());
                ++missing[j];
            } else {
                columns[j].push_back(value);
            }
        }
    }
    const std::size_t length = columns.empty() ? 0 : columns[0].size();
    if (length == 0) throw Error(errc::parse_error, path.string() + " has no data rows");

    if (interpolate_missing) {
        for (std::size_t j = 0; j < d; ++j)
            if (missing[j] > 0) interpolate_column(columns[j], j);
    }

    CsvLoadResult result;
    result.data.names = std::move(names);
    result.data.values.resize(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t t = 0; t < length; ++t)
            result.data.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) =
                columns[j][t];
    result.missing_counts = std::move(missing);
    return result;
}

void write_csv(const std::filesystem::path& path, const TimeSeriesSet& data) {
    std::string text;
    for (std::size_t j = 0; j < data.n_vars(); ++j) {
        if (j > 0) text += ',';
        text += data.names[j];
    }
    text += '\n';
    for (std::size_t t = 0; t < data.length(); ++t) {
        for (std::size_t j = 0; j < data.n_vars(); ++j) {
            if (j > 0) text += ',';
            text += format_double(
                data.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)));
        }
        text += '\n';
    }
    write_text_file(path, text);
}

void write_graph_json(const std::filesystem::path& path, const CausalGraph& graph) {
    json doc;
    doc["names"] = graph.names;
    doc["alpha"] = graph.alpha;
    doc["window"] = graph.plan ? json(graph.plan->length) : json(nullptr);
    doc["stride"] = graph.plan ? json(graph.plan->stride) : json(nullptr);
    doc["max_lag"] = graph.max_lag;
    doc["adjacency"] = matrix_to_json(graph, true);
    doc["p_values"] = matrix_to_json(graph, false);
    doc["metadata"] = graph.metadata;
    write_text_file(path, doc.dump(2) + "\n");
}

void write_pvalues_csv(const std::filesystem::path& path, const CausalGraph& graph) {
    std::string text;
    for (const std::string& name : graph.names) {
        text += ',';
        text += name;
    }
    text += '\n';
    for (std::size_t i = 0; i < graph.n_vars; ++i) {
        text += graph.names[i];
        for (std::size_t j = 0; j < graph.n_vars; ++j) {
            text += ',';
            text += i == j ? "nan"
                           : format_double(graph.p_values(static_cast<Eigen::Index>(i),
                                                          static_cast<Eigen::Index>(j)));
        }
        text += '\n';
    }
    write_text_file(path, text);
}

void write_truth_json(const std::filesystem::path& path, const GroundTruth& truth,
                      const ScenarioSpec& spec) {
    json doc;
    doc["n_vars"] = truth.n_vars;
    doc["causal_strength"] = truth.causal_strength;
    doc["lag_tau"] = truth.lag;
    doc["edge_prob"] = spec.edge_prob;
    doc["scenario"] = scenario_name(spec.kind);
    doc["seed"] = spec.seed;
    doc["length"] = spec.length;
    doc["sigma_b"] = spec.ou.sigma_b;
    doc["sigma_ga"] = spec.ou.sigma_ga;
    doc["sigma_gm"] = scenario_is_mult(spec.kind) ? spec.ou.sigma_gm : 0.0;
    json rows = json::array();
    for (std::size_t i = 0; i < truth.n_vars; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < truth.n_vars; ++j) row.push_back(truth.edge(i, j) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    doc["adjacency"] = std::move(rows);
    write_text_file(path, doc.dump(2) + "\n");
}

} // namespace placy
