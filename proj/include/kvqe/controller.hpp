#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/noise.hpp"
#include "kvqe/optimize.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

struct ControllerConfig {
    double stop_threshold = 0.01;    // rule 1: success band around E_gs
    double band_delta = 0.02;        // rules 2/3 dead band, fraction of |E_gs|
    double j_step = 0.01;            // multiplicative J update per rule firing
    double j_min = 0.5;
    double j_max = 2.0;
    int max_recursions = 5;          // rule 4 failsafe
    int max_cycles_per_pass = 100;

    void validate() const;
};

struct TraceRow {
    int cycle;         // global, strictly increasing across passes
    double energy;     // measured at the current J
    double j;
    double rel_error;  // against the fixed J=1 ground-state energy
    int recursion;     // pass index, 0 = initial
};

struct VqeTrace {
    std::vector<TraceRow> rows;

    double min_rel_error() const;
    void write_csv(std::ostream& out, std::span<const std::string> summary_comments = {}) const;
};

VqeTrace read_trace_csv(const std::string& path);

struct ExperimentResult {
    bool success = false;
    VqeTrace trace;
    double final_relative_error = 0.0;
    int recursions_used = 0;
    double final_j = 1.0;
    double raw_energy_at_stop = 0.0;  // last energy re-expressed at J = 1
    std::uint64_t evaluations = 0;
    std::string error;  // non-empty when the evaluator failed mid-pass
};

// Objective with an explicit uniform-interaction argument; the controller
// rescales J between cycles while the comparison target E_gs stays fixed
// at its J=1 value.
using EnergyFn =
    std::function<double(std::span<const double> params, double j, std::uint64_t eval_seed)>;

// The four-rule adaptive driver. Per cycle, in order:
//   1. rel_error < stop_threshold            -> abort, success
//   2. E below E_gs - band_delta*|E_gs|      -> J *= 1 - j_step (clamped)
//   3. E above E_gs + band_delta*|E_gs|      -> J *= 1 + j_step (clamped)
//   4. pass ends without rule 1              -> warm restart, <= max_recursions
ExperimentResult run_mitigated(const EnergyFn& energy, int n_params, OptimizerKind kind,
                               double e_gs, const ControllerConfig& cfg, std::uint64_t seed);

// Plain VQE at fixed J=1; success iff some cycle lands inside the stop band.
ExperimentResult run_unmitigated(const EnergyFn& energy, int n_params, OptimizerKind kind,
                                 double e_gs, double stop_threshold, int max_cycles,
                                 std::uint64_t seed);

// Shot-sampled objective at the given noise level; shots_per_basis = 0
// selects the exact noiseless expectation path.
EnergyFn make_vqe_energy(const ParamCircuit& ansatz, const PauliSum& h, const NoiseModel& noise,
                         std::uint64_t shots_per_basis);

ExperimentResult run_mitigated_vqe(const PauliSum& h, const ParamCircuit& ansatz,
                                   OptimizerKind kind, const NoiseModel& noise, double e_gs,
                                   const ControllerConfig& cfg, std::uint64_t shots_per_basis,
                                   std::uint64_t seed);

ExperimentResult run_unmitigated_vqe(const PauliSum& h, const ParamCircuit& ansatz,
                                     OptimizerKind kind, const NoiseModel& noise, double e_gs,
                                     double stop_threshold, int max_cycles,
                                     std::uint64_t shots_per_basis, std::uint64_t seed);

}  // namespace kvqe
