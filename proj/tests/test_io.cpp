#include "placy/discovery.hpp"
#include "placy/error.hpp"
#include "placy/io.hpp"
#include "placy/rng.hpp"
#include "placy/synth.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using placy::CausalGraph;
using placy::Error;
using placy::errc;
using placy::load_csv;
using placy::Rng;
using placy::TimeSeriesSet;
using placy::write_csv;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("placy_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir.path / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

} // namespace

TEST_CASE("load_csv: plain numeric table") {
    TempDir dir;
    const auto p = write_file(dir, "plain.csv", "a,b\n1,2\n2,4\n3,6\n");
    const auto loaded = load_csv(p);
    CHECK(loaded.data.length() == 3);
    CHECK(loaded.data.n_vars() == 2);
    CHECK(loaded.data.names == std::vector<std::string>{"a", "b"});
    CHECK(loaded.data.values(2, 1) == 6.0);
    CHECK(loaded.missing_counts == std::vector<std::size_t>{0, 0});
}

TEST_CASE("load_csv: interior gap is linearly interpolated") {
    TempDir dir;
    const auto p = write_file(dir, "gap.csv", "v\n1\n\n3\n");
    const auto loaded = load_csv(p);
    CHECK(loaded.data.values(1, 0) == doctest::Approx(2.0));
    CHECK(loaded.missing_counts[0] == 1);
}

TEST_CASE("load_csv: boundary gaps take the nearest finite value") {
    TempDir dir;
    const auto p = write_file(dir, "bounds.csv", "v\nnan\n5\nNaN\n");
    const auto loaded = load_csv(p);
    CHECK(loaded.data.values(0, 0) == 5.0);
    CHECK(loaded.data.values(1, 0) == 5.0);
    CHECK(loaded.data.values(2, 0) == 5.0);
    CHECK(loaded.missing_counts[0] == 2);
}

TEST_CASE("load_csv: multi-sample gap interpolates on the index") {
    TempDir dir;
    const auto p = write_file(dir, "wide_gap.csv", "v\n0\nNA\n\nNA\n8\n");
    const auto loaded = load_csv(p);
    CHECK(loaded.data.values(1, 0) == doctest::Approx(2.0));
    CHECK(loaded.data.values(2, 0) == doctest::Approx(4.0));
    CHECK(loaded.data.values(3, 0) == doctest::Approx(6.0));
}

TEST_CASE("load_csv: without interpolation the gaps stay NaN") {
    TempDir dir;
    const auto p = write_file(dir, "raw.csv", "v\n1\n\n3\n");
    const auto loaded = load_csv(p, false);
    CHECK(std::isnan(loaded.data.values(1, 0)));
    CHECK(loaded.missing_counts[0] == 1);
}

TEST_CASE("load_csv: error taxonomy") {
    TempDir dir;
    try {
        load_csv(dir.path / "absent.csv");
        FAIL("expected io_error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::io_error);
        CHECK(std::string(e.what()).find("absent.csv") != std::string::npos);
    }

    const auto bad = write_file(dir, "bad.csv", "a,b\n1,2\n1,zebra\n");
    try {
        load_csv(bad);
        FAIL("expected parse_error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
        CHECK(std::string(e.what()).find("column 2") != std::string::npos);
    }

    const auto ragged = write_file(dir, "ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_csv(ragged), Error);

    const auto hollow = write_file(dir, "hollow.csv", "a,b\n1,\n2,nan\n");
    try {
        load_csv(hollow);
        FAIL("expected unusable_column");
    } catch (const Error& e) {
        CHECK(e.code() == errc::unusable_column);
    }
}

TEST_CASE("load_csv: crlf and bom are tolerated") {
    TempDir dir;
    const auto p =
        write_file(dir, "crlf.csv", std::string("\xEF\xBB\xBF") + "a,b\r\n1,2\r\n3,4\r\n");
    const auto loaded = load_csv(p);
    CHECK(loaded.data.names[0] == "a");
    CHECK(loaded.data.values(1, 1) == 4.0);
}

TEST_CASE("csv round trip is exact") {
    TempDir dir;
    Rng rng(0x5eed4001);
    TimeSeriesSet data;
    data.names = {"x1", "x2", "x3"};
    data.values.resize(64, 3);
    for (Eigen::Index t = 0; t < 64; ++t)
        for (Eigen::Index v = 0; v < 3; ++v) data.values(t, v) = 1e3 * (rng.uniform() - 0.5);
    const fs::path p = dir.path / "round.csv";
    write_csv(p, data);
    const auto loaded = load_csv(p);
    CHECK(loaded.data.names == data.names);
    CHECK((loaded.data.values - data.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph json carries the stable schema") {
    TempDir dir;
    CausalGraph graph;
    graph.n_vars = 2;
    graph.names = {"u", "v"};
    graph.alpha = 0.05;
    graph.adjacency = {0, 1, 0, 0};
    graph.p_values.resize(2, 2);
    graph.p_values << std::nan(""), 0.01, 0.5, std::nan("");
    graph.plan = placy::WindowPlan{50, 1};
    graph.max_lag = 10;
    graph.metadata["method"] = "placy";

    const fs::path p = dir.path / "graph.json";
    placy::write_graph_json(p, graph);

    std::ifstream in(p);
    nlohmann::json doc;
    in >> doc;
    for (const char* field :
         {"names", "alpha", "window", "stride", "max_lag", "adjacency", "p_values", "metadata"})
        CHECK(doc.contains(field));
    CHECK(doc["window"] == 50);
    CHECK(doc["adjacency"][0][1] == true);
    CHECK(doc["adjacency"][1][0] == false);
    CHECK(doc["p_values"][0][0].is_null()); // diagonal sentinel
    CHECK(doc["p_values"][0][1].get<double>() == 0.01);

    // baseline graphs have no window plan
    graph.plan.reset();
    placy::write_graph_json(p, graph);
    std::ifstream in2(p);
    nlohmann::json doc2;
    in2 >> doc2;
    CHECK(doc2["window"].is_null());
    CHECK(doc2["stride"].is_null());
}

TEST_CASE("p-value csv has name headers and nan diagonal") {
    TempDir dir;
    CausalGraph graph;
    graph.n_vars = 2;
    graph.names = {"u", "v"};
    graph.alpha = 0.05;
    graph.adjacency = {0, 1, 0, 0};
    graph.p_values.resize(2, 2);
    graph.p_values << std::nan(""), 0.25, 0.75, std::nan("");
    const fs::path p = dir.path / "p.csv";
    placy::write_pvalues_csv(p, graph);
    std::ifstream in(p);
    std::string header, row0;
    std::getline(in, header);
    std::getline(in, row0);
    CHECK(header == ",u,v");
    CHECK(row0 == "u,nan,0.25");
}

TEST_CASE("truth json records the scenario") {
    TempDir dir;
    placy::ScenarioSpec spec;
    spec.kind = placy::ScenarioKind::OUHAT_MULT;
    spec.n_vars = 3;
    spec.length = 100;
    spec.ou.sigma_gm = 1.0;
    spec.seed = 77;
    const auto scenario = placy::make_scenario(spec);
    const fs::path p = dir.path / "truth.json";
    placy::write_truth_json(p, scenario.truth, spec);
    std::ifstream in(p);
    nlohmann::json doc;
    in >> doc;
    CHECK(doc["scenario"] == "ouhat-mult");
    CHECK(doc["n_vars"] == 3);
    CHECK(doc["seed"] == 77);
    CHECK(doc["adjacency"].size() == 3);
}
