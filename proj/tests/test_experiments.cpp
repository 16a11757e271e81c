#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "shiftlab/experiments.hpp"

using namespace shiftlab;

TEST_CASE("config round trip") {
    ExperimentConfig config;
    config.experiment = "boundary";
    config.space_text = "{\"kind\":\"context-free\"}";
    config.alpha = Rat(1, 3);
    config.seed = 99;
    config.format = "csv";
    config.params["L"] = "4";
    ExperimentConfig back = ExperimentConfig::deserialize(config.serialize());
    CHECK(back.serialize() == config.serialize());
    CHECK(back.alpha == Rat(1, 3));
    CHECK(back.param_int("L", 0) == 4);
}

TEST_CASE("beta experiment on the default fixture") {
    ExperimentConfig config;
    config.experiment = "beta";
    ExperimentResult result = run_experiment(config);
    CHECK(result.exit_code == 0);
    CHECK(result.summary == "beta=1/2 witness=01 oracle=agree");
    CHECK(result.csv.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("unknown experiments exit with a config error") {
    ExperimentConfig config;
    config.experiment = "nonsense";
    CHECK(run_experiment(config).exit_code == 2);
}

TEST_CASE("fixed seeds make byte-identical artifacts") {
    ExperimentConfig config;
    config.experiment = "closing";
    config.seed = 77;
    config.params["count"] = "25";
    ExperimentResult first = run_experiment(config);
    ExperimentResult second = run_experiment(config);
    CHECK(first.csv == second.csv);
    CHECK(first.json_text == second.json_text);
    CHECK(first.exit_code == 0);

    config.seed = 78;
    ExperimentResult third = run_experiment(config);
    CHECK(first.csv != third.csv);
}

TEST_CASE("artifacts land in the output directory") {
    ExperimentConfig config;
    config.experiment = "mane-demo";
    config.params["n-max"] = "4";
    config.out_dir = (std::filesystem::temp_directory_path() / "shiftlab-test-out").string();
    std::filesystem::remove_all(config.out_dir);
    ExperimentResult result = run_experiment(config);
    auto written = write_artifacts(config, result);
    CHECK(written.size() == 2);
    for (const std::string& path : written) {
        std::ifstream in(path);
        CHECK(in.good());
    }
    std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("boundary experiment cross-checks the exact dispatch") {
    ExperimentConfig config;
    config.experiment = "boundary";
    config.space_text = "{\"kind\":\"context-free\"}";
    config.params["L"] = "4";
    ExperimentResult result = run_experiment(config);
    CHECK(result.exit_code == 0);
    CHECK(result.summary.find("matches exact boundary") != std::string::npos);
}

TEST_CASE("eventual-sofic sweep") {
    ExperimentConfig config;
    config.experiment = "eventual-sofic";
    ExperimentResult result = run_experiment(config);
    CHECK(result.exit_code == 0);
    CHECK(result.summary.find("even: level 0") != std::string::npos);
    CHECK(result.summary.find("context-free: level 1") != std::string::npos);
    CHECK(result.summary.find("twice-interspersed even: level 2") != std::string::npos);
}
