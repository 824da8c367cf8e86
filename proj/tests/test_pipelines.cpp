#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "arcd/errors.hpp"
#include "arcd/pipelines.hpp"
#include "support/oracles.hpp"

using namespace arcd;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::vector<double>& values) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << "value\n";
    for (double v : values) out << format_real(v) << '\n';
    return path;
}

std::string render(const Table& t) {
    std::ostringstream out;
    write_table(out, t, OutputFormat::csv);
    return out.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ARCD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Options, Parsing) {
    EXPECT_EQ(parse_command("bayes-spike"), Command::bayes_spike);
    EXPECT_FALSE(parse_command("nope"));
    EXPECT_EQ(to_string(Command::bayes_flat), "bayes-flat");
    EXPECT_EQ(std::get<Sigma2Known>(parse_sigma2_mode("known:2.5")).value, 2.5);
    EXPECT_TRUE(std::holds_alternative<Sigma2Estimated>(parse_sigma2_mode("mle")));
    EXPECT_THROW(parse_sigma2_mode("known:-1"), InputError);
    EXPECT_THROW(parse_sigma2_mode("known:x"), InputError);
    EXPECT_EQ(std::get<SpikeExplicit>(parse_spike_mode("b:0.24")).b, 0.24);
    EXPECT_TRUE(std::holds_alternative<SpikeAuto>(parse_spike_mode("auto")));
    EXPECT_TRUE(std::holds_alternative<SpikeNone>(parse_spike_mode("none")));
    EXPECT_THROW(parse_spike_mode("b:1"), InputError);

    AnalysisConfig cfg;
    EXPECT_EQ(cfg.resolved_reps(), 10000u);
    cfg.precise = true;
    EXPECT_EQ(cfg.resolved_reps(), 100000u);
    cfg.reps = 7;
    EXPECT_EQ(cfg.resolved_reps(), 7u);
}

TEST(Pipelines, SeedIsRequired) {
    AnalysisConfig cfg;
    cfg.phi_obs = 0.5;
    EXPECT_THROW(run_pipeline(cfg), InputError);
}

TEST(Pipelines, CdFarAboveSupportIsZero) {
    AnalysisConfig cfg;
    cfg.command = Command::cd;
    cfg.phi_obs = 10.0;
    cfg.seed = 1;
    cfg.reps = 2000;
    cfg.phi_min = 0.0;
    cfg.grid_points = 50;
    const Table t = run_pipeline(cfg);
    ASSERT_EQ(t.rows.size(), 51u);
    for (const auto& row : t.rows) EXPECT_EQ(row[1].get<double>(), 0.0);
}

TEST(Pipelines, CurveMedianNearReportedValue) {
    AnalysisConfig cfg;
    cfg.command = Command::curve;
    cfg.phi_obs = 0.90;
    cfg.seed = 2;
    const Table t = run_pipeline(cfg);
    std::size_t best = 0;
    for (std::size_t k = 1; k < t.rows.size(); ++k)
        if (t.rows[k][1].get<double>() < t.rows[best][1].get<double>()) best = k;
    EXPECT_NEAR(t.rows[best][0].get<double>(), 0.909, 0.005);
    EXPECT_NEAR(t.summary["median"].get<double>(), 0.909, 0.005);
    EXPECT_EQ(t.config["command"], "curve");
    EXPECT_EQ(t.config["n"], 100);
    EXPECT_EQ(t.config["reps"], 10000);
}

TEST(Pipelines, DensityColumns) {
    AnalysisConfig cfg;
    cfg.command = Command::density;
    cfg.phi_obs = 0.533;
    cfg.seed = 3;
    cfg.reps = 5000;
    const Table t = run_pipeline(cfg);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"phi", "c_emp", "c1", "c2"}));
    EXPECT_GT(t.rows.size(), 20u);
    EXPECT_GT(t.summary["b"].get<double>(), 0.0);
}

TEST(Pipelines, AnalyzeOnSyntheticSeries) {
    std::mt19937_64 rng(4);
    const auto path = write_temp("arcd_analyze.csv", oracle::ar1_path(rng, 0.7, 1.0, 120));
    AnalysisConfig cfg;
    cfg.command = Command::analyze;
    cfg.input = path.string();
    cfg.seed = 5;
    cfg.reps = 2000;
    cfg.grid_points = 200;
    const Table t = run_pipeline(cfg);
    const double c1 = t.summary["C(1)"].get<double>();
    EXPECT_DOUBLE_EQ(t.summary["unit_root_p"].get<double>(), 1.0 - c1);
    EXPECT_DOUBLE_EQ(t.summary["b"].get<double>(), 1.0 - c1);
    EXPECT_EQ(t.summary["n"].get<std::size_t>(), 120u);
    EXPECT_EQ(t.rows.size(), 6u);  // three methods, two levels
    for (const auto& row : t.rows)
        if (!row[2].is_null()) EXPECT_LT(row[2].get<double>(), row[3].get<double>());

    cfg.spike = SpikeNone{};
    EXPECT_EQ(run_pipeline(cfg).rows.size(), 4u);
    std::filesystem::remove(path);
}

TEST(Pipelines, IdenticalConfigsGiveIdenticalOutput) {
    std::mt19937_64 rng(6);
    const auto path = write_temp("arcd_repro.csv", oracle::ar1_path(rng, 0.9, 1.0, 80));
    AnalysisConfig cfg;
    cfg.command = Command::bootstrap;
    cfg.input = path.string();
    cfg.seed = 7;
    cfg.reps = 1000;
    cfg.grid_points = 100;
    const Table a = run_pipeline(cfg);
    cfg.max_parallel = 3;
    const Table b = run_pipeline(cfg);
    EXPECT_EQ(render(a), render(b));
    EXPECT_EQ(a.config["seed"], 7);
    EXPECT_EQ(a.config["reps"], 1000);
    std::filesystem::remove(path);
}

TEST(Pipelines, DfTable) {
    AnalysisConfig cfg;
    cfg.command = Command::df;
    cfg.seed = 8;
    cfg.reps = 20000;
    cfg.n = 200;
    const Table t = run_pipeline(cfg);
    EXPECT_NEAR(t.summary["F(-5)"].get<double>(), 0.125, 0.015);
    for (std::size_t k = 1; k < t.rows.size(); ++k)
        EXPECT_LE(t.rows[k - 1][1].get<double>(), t.rows[k][1].get<double>());
}

TEST(Cli, ExitCodes) {
    std::mt19937_64 rng(9);
    const auto good = write_temp("arcd_cli_good.csv", oracle::ar1_path(rng, 0.5, 1.0, 50));
    const auto zeros = write_temp("arcd_cli_zero.csv", {0.0, 0.0, 0.0, 0.0});
    const auto out = std::filesystem::temp_directory_path() / "arcd_cli_out.json";

    EXPECT_EQ(run_cli("bootstrap --input " + good.string() + " --seed 1 --reps 200 --format json -o " + out.string()), 0);
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["config"]["command"], "bootstrap");
    EXPECT_EQ(j["columns"][0], "phi");

    EXPECT_EQ(run_cli("bootstrap --input " + good.string() + " --reps 200"), 2);                // no seed
    EXPECT_EQ(run_cli("bootstrap --input /nonexistent.csv --seed 1"), 2);
    EXPECT_EQ(run_cli("bayes-spike --input " + good.string() + " --seed 1 --spike b:7"), 2);
    EXPECT_EQ(run_cli("analyze --input " + zeros.string() + " --seed 1 --reps 100"), 3);  // degenerate
    EXPECT_EQ(run_cli("cd --phi-obs 0.5 --seed 1 --reps 200 --grid-points 20"), 0);
    for (const auto& p : {good, zeros, out}) std::filesystem::remove(p);
}
