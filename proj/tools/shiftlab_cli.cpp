#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "shiftlab/experiments.hpp"

using namespace shiftlab;

int main(int argc, char** argv) {
    CLI::App app{"symbolic-dynamics and ergodic-optimization workbench"};

    std::string config_path, experiment, alpha, out_dir, format;
    std::uint64_t seed = 0;
    bool have_seed = false;
    app.add_option("--config", config_path, "experiment configuration file (JSON)");
    app.add_option("--experiment", experiment,
                   "boundary | beta | locking | closing | morse-bounds | non-tpo | "
                   "eventual-sofic | mane-demo");
    app.add_option("--alpha", alpha, "metric parameter as p/q (default 1/2)");
    app.add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        have_seed = true;
    });
    app.add_option("--out", out_dir, "directory for csv/json artifacts");
    app.add_option("--format", format, "csv | json | both (default both)");

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config: " << config_path << "\n";
            return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            config = ExperimentConfig::deserialize(buffer.str());
        } catch (const std::exception& e) {
            std::cerr << "bad config: " << e.what() << "\n";
            return 2;
        }
    }
    if (!experiment.empty()) config.experiment = experiment;
    if (!alpha.empty()) {
        try {
            config.alpha = rat_from_string(alpha);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }
    if (have_seed) config.seed = seed;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!format.empty()) config.format = format;
    if (config.experiment.empty()) {
        std::cerr << "no experiment selected (use --experiment or --config)\n";
        return 2;
    }

    ExperimentResult result = run_experiment(config);
    for (const std::string& path : write_artifacts(config, result))
        std::cout << "wrote " << path << "\n";
    std::cout << result.summary << "\n";
    return result.exit_code;
}
