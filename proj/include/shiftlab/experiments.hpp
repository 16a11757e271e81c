#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shiftlab/rational.hpp"

namespace shiftlab {

// Declarative description of one experiment run. A fixed seed makes every
// produced artifact byte-identical.
struct ExperimentConfig {
    std::string experiment;  // boundary | beta | locking | closing | morse-bounds
                             // | non-tpo | eventual-sofic | mane-demo
    std::string space_text;     // serialized shift-space definition ("" = fixture default)
    std::string function_text;  // serialized locally constant function ("" = default)
    Rat alpha = Rat(1, 2);
    std::uint64_t seed = 1;
    std::string out_dir;           // "" = stdout only
    std::string format = "both";   // csv | json | both
    std::map<std::string, std::string> params;

    std::string serialize() const;
    static ExperimentConfig deserialize(const std::string& text);

    long long param_int(const std::string& key, long long fallback) const;
    std::string param_str(const std::string& key, const std::string& fallback) const;
};

struct ExperimentResult {
    int exit_code = 0;  // 0 ok, 1 certified-claim violation, 2 config error
    std::string summary;
    std::string csv;
    std::string json_text;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes csv/json artifacts under config.out_dir according to config.format.
// Returns the file paths written.
std::vector<std::string> write_artifacts(const ExperimentConfig& config,
                                         const ExperimentResult& result);

}  // namespace shiftlab
