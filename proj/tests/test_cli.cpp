// Experiment commands and their CSV / manifest outputs.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "plateau/experiments.hpp"
#include "plateau/report.hpp"

using namespace plateau;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("plateau_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScaleConfig tiny_scale() {
    ScaleConfig c;
    c.n_min = 2;
    c.n_max = 5;
    c.depth = 2;
    c.seeds = 20;
    return c;
}

}  // namespace

TEST(Report, FormatDoubleRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, CsvWriteReadRoundTrip) {
    const auto dir = scratch_dir("csv");
    CsvTable t({"a", "b"});
    t.add_row({cell(std::size_t{3}), cell(0.25)});
    t.add_row({cell("x"), cell(1e-20)});
    EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
    t.write(dir / "t.csv");
    const auto back = CsvTable::read(dir / "t.csv");
    EXPECT_EQ(back.header(), t.header());
    EXPECT_EQ(back.rows(), t.rows());
    EXPECT_EQ(back.column("b"), 1u);
    EXPECT_THROW(back.column("c"), std::out_of_range);
}

TEST(Scale, RowCountsMatchSweepAndRerunsAreIdentical) {
    const auto a = run_scale(tiny_scale());
    // 2 costs x 4 sizes x 2 entries.
    EXPECT_EQ(a.tables.at("variance").row_count(), 16u);
    EXPECT_EQ(a.tables.at("cost_variance").row_count(), 16u);
    auto cfg = tiny_scale();
    cfg.threads = 3;
    const auto b = run_scale(cfg);
    for (const auto& [name, table] : a.tables) EXPECT_EQ(table.to_string(), b.tables.at(name).to_string()) << name;
}

TEST(Scale, RejectsInvertedRange) {
    auto cfg = tiny_scale();
    cfg.n_min = 6;
    EXPECT_THROW(run_scale(cfg), std::invalid_argument);
}

TEST(Depth, ZeroDepthGivesZeroVarianceAndSingleDepthOneRow) {
    DepthConfig c;
    c.costs = {CostKind::Global};
    c.n = 4;
    c.depth_min = 0;
    c.depth_max = 0;
    c.seeds = 10;
    c.entry_k = 0;
    const auto out = run_depth(c);
    const auto& t = out.tables.at("variance");
    ASSERT_EQ(t.row_count(), 1u);
    EXPECT_EQ(std::stod(t.rows()[0][t.column("var_hat")]), 0.0);
    c.depth_min = c.depth_max = 2;
    EXPECT_EQ(run_depth(c).tables.at("variance").row_count(), 1u);
}

TEST(Shots, TablesHaveOneRowPerGridPoint) {
    ShotsConfig c;
    c.costs = {CostKind::Local};
    c.ns = {3, 4};
    c.depth = 2;
    c.seeds = 20;
    c.shot_grid = {16, 64, 256};
    const auto out = run_shots(c);
    EXPECT_EQ(out.tables.at("variance").row_count(), 2u * (1 + 3));
    EXPECT_EQ(out.tables.at("shot_noise").row_count(), 6u);
    EXPECT_EQ(out.tables.at("shot_fit").row_count(), 2u);
}

TEST(Spectrum, SingleQubitSmoke) {
    SpectrumConfig c;
    c.costs = {CostKind::Global};
    c.ns = {1};
    c.depth = 1;
    c.seeds = 1;
    const auto out = run_spectrum(c);
    EXPECT_EQ(out.tables.at("eigenvalues").row_count(), 1u);
    EXPECT_EQ(out.tables.at("spectral_summary").row_count(), 1u);
}

TEST(Optimize, ZeroIterationsEmitsInitialRowOnly) {
    OptimizeConfig c;
    c.costs = {CostKind::Local};
    c.optimizers = {Optimizer::Sgd};
    c.n = 3;
    c.depth = 1;
    c.iterations = 0;
    c.seeds = 2;
    const auto out = run_optimize(c);
    EXPECT_EQ(out.tables.at("trajectory").row_count(), 1u);
    EXPECT_EQ(out.extra["oracle_accounting"][0]["gradient_shifted_evaluations_per_iteration"], 6);
}

TEST(Bounds, ChainExampleAndMissingCsv) {
    BoundsConfig c;
    c.ns = {100};
    c.depths = {1};
    c.etas = {1.0, 0.5};
    const auto out = run_bounds(c);
    const auto& t = out.tables.at("bounds");
    bool found = false;
    for (const auto& row : t.rows()) {
        if (row[t.column("regime")] == "local") {
            EXPECT_DOUBLE_EQ(std::stod(row[t.column("variance_bound")]), 0.11);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    c.empirical_csvs = {"/nonexistent/variance.csv"};
    EXPECT_THROW(run_bounds(c), std::runtime_error);
}

TEST(Bounds, AttachesEmpiricalVariances) {
    const auto dir = scratch_dir("bounds");
    auto sc = tiny_scale();
    sc.costs = {CostKind::Local};
    sc.n_min = sc.n_max = 4;
    sc.depth = 1;
    const auto scale = run_scale(sc);
    scale.tables.at("variance").write(dir / "variance.csv");
    BoundsConfig c;
    c.ns = {4};
    c.depths = {1};
    c.etas = {1.0};
    c.empirical_csvs = {dir / "variance.csv"};
    const auto out = run_bounds(c);
    const auto& t = out.tables.at("bounds");
    bool attached = false;
    for (const auto& row : t.rows()) {
        if (row[t.column("regime")] == "local" && !row[t.column("empirical_variance")].empty()) attached = true;
    }
    EXPECT_TRUE(attached);
}

TEST(Outputs, ManifestListsFilesWithRowCounts) {
    const auto dir = scratch_dir("outputs");
    const auto out = run_scale(tiny_scale());
    write_outputs(dir, "scale", "scale", 7, out);
    const auto manifest = nlohmann::json::parse(slurp(dir / "scale_manifest.json"));
    EXPECT_EQ(manifest["base_seed"], 7);
    ASSERT_TRUE(fs::exists(dir / "scale_variance.csv"));
    bool listed = false;
    for (const auto& f : manifest["outputs"]) {
        if (f["file"] == "scale_variance.csv") {
            EXPECT_EQ(f["rows"], 16);
            listed = true;
        }
    }
    EXPECT_TRUE(listed);
    // Writing again produces byte-identical CSVs.
    const auto first = slurp(dir / "scale_variance.csv");
    write_outputs(dir, "scale", "scale", 7, run_scale(tiny_scale()));
    EXPECT_EQ(first, slurp(dir / "scale_variance.csv"));
}
