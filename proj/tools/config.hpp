#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcmap/ensemble.hpp"
#include "qcmap/models.hpp"

namespace qcmap::cli {

// Flat run configuration shared by all subcommands. `eps` and `alpha` accept
// either a scalar or a start:stop:count range (used by the sweeps); `eta`
// accepts a number or "auto" (= 2 Omega).
struct RunConfig {
    std::string subcommand;

    std::string model = "spin-boson";
    std::vector<std::string> methods = {"mash"};
    double beta = 0.3;
    double delta = 1.0;
    std::string eps = "0";
    std::string alpha = "1";
    double omega = 1.0;
    double xbar = 5.0;
    std::string eta = "auto";

    int ntraj = 10000;
    double dt = 0.01;
    double tmax = 400.0;
    double sample_every = 4.0;
    std::uint64_t seed = 75046251ULL;
    int threads = 0;

    double hist_time = 500.0;
    int hist_bins = 24;

    std::string out;
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;
};

struct Range {
    double start = 0.0, stop = 0.0;
    int count = 1;
    double at(int i) const {
        return count < 2 ? start : start + (stop - start) * i / (count - 1);
    }
};

double parse_scalar(const std::string& s, const std::string& key);
Range parse_range(const std::string& s, const std::string& key);

// Apply "key = value" lines or a flat JSON object; unknown keys are rejected.
void apply_config_text(const std::string& text, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);
std::string serialize_config(const RunConfig& cfg);

// Resolved model/bath/ensemble pieces.
TwoLevelModel make_model(const RunConfig& cfg, double eps, double alpha);
BathSpec make_bath(const RunConfig& cfg);
EnsembleConfig make_ensemble(const RunConfig& cfg, Method method);

// Parses argv (including an optional --config file, flags override it).
// Throws ConfigError on any invalid input.
RunConfig parse_config(int argc, const char* const* argv);

int run(const RunConfig& cfg); // dispatch; returns process exit code

} // namespace qcmap::cli
