#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kvqe/controller.hpp"
#include "kvqe/mitigation.hpp"

namespace kvqe {

enum class MitigationMode { None, Controller, Zne, Trex };

std::string to_string(MitigationMode m);
MitigationMode mitigation_mode_from_string(const std::string& s);

// Flat key=value experiment configuration; unknown keys are errors.
struct RunConfig {
    std::string lattice = "builtin";  // "builtin" or a lattice file path
    int n_qubits = 16;
    int ansatz_reps = 1;
    OptimizerKind optimizer = OptimizerKind::NFT;
    NoiseModel noise;                  // p_cx / p_readout keys
    std::uint64_t shots = 1024;        // per measurement basis; 0 = exact
    MitigationMode mode = MitigationMode::Controller;
    int n_trials = 50;
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    ControllerConfig controller;       // stop_threshold .. max_cycles keys
    ZneConfig zne;                     // zne_scales, zne_fit
    std::uint64_t calibration_shots = 4096;  // T-Rex
    int workers = 0;                   // 0 = hardware concurrency

    void validate() const;
};

// Raised for malformed configs (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string write_config(const RunConfig& cfg);

struct ExperimentSummary {
    std::uint64_t total = 0;
    std::uint64_t failed = 0;
    double success_rate = 0.0;
    double avg_cycles = 0.0;  // over all trials, failures included
    std::uint64_t total_evaluations = 0;
    double wall_time_seconds = 0.0;

    std::string to_key_values() const;
};

struct BatchResult {
    ExperimentSummary summary;
    std::vector<ExperimentResult> trials;
};

// Runs one experiment with the trial's derived seed.
ExperimentResult run_single(const RunConfig& cfg, std::uint64_t trial_seed);

// n_trials independent experiments; trial i is seeded derive_seed(seed, i),
// so results never depend on worker scheduling. Writes trace_<i>.csv per
// trial plus summary.txt under out_dir (unless out_dir is empty).
BatchResult run_batch(const RunConfig& cfg);

// Two-series plot data (energy per cycle + constant target line), CSV,
// with recursion restarts annotated; optionally an SVG rendering.
void emit_plot_data(const VqeTrace& trace, double target, const std::string& csv_path,
                    const std::string& svg_path = "");

// One-sided two-proportion z test that rate a (succ_a / n_a) exceeds
// rate b; returns the z statistic.
double two_proportion_z(std::uint64_t succ_a, std::uint64_t n_a, std::uint64_t succ_b,
                        std::uint64_t n_b);

}  // namespace kvqe
