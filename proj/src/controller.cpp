#include "kvqe/controller.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kvqe/exact.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

void ControllerConfig::validate() const {
    if (!(stop_threshold > 0.0) || !(stop_threshold < band_delta)) {
        throw std::invalid_argument("need 0 < stop_threshold < band_delta");
    }
    if (!(j_step > 0.0) || j_step >= 1.0) throw std::invalid_argument("j_step must be in (0, 1)");
    if (!(j_min > 0.0) || !(j_min < 1.0) || !(j_max > 1.0)) {
        throw std::invalid_argument("need 0 < j_min < 1 < j_max");
    }
    if (max_recursions < 0 || max_recursions > 5) {
        throw std::invalid_argument("max_recursions must be in 0..5");
    }
    if (max_cycles_per_pass < 1) throw std::invalid_argument("max_cycles_per_pass must be >= 1");
}

double VqeTrace::min_rel_error() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) best = std::min(best, r.rel_error);
    return best;
}

namespace {
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
}  // namespace

void VqeTrace::write_csv(std::ostream& out, std::span<const std::string> summary_comments) const {
    out << "cycle,energy,J,rel_error,recursion\n";
    for (const auto& r : rows) {
        out << r.cycle << "," << fmt(r.energy) << "," << fmt(r.j) << "," << fmt(r.rel_error)
            << "," << r.recursion << "\n";
    }
    for (const auto& line : summary_comments) out << "# " << line << "\n";
}

VqeTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    VqeTrace trace;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        TraceRow r;
        char comma;
        std::istringstream ss(line);
        if (ss >> r.cycle >> comma >> r.energy >> comma >> r.j >> comma >> r.rel_error >> comma >>
            r.recursion) {
            trace.rows.push_back(r);
        }
    }
    return trace;
}

ExperimentResult run_mitigated(const EnergyFn& energy, int n_params, OptimizerKind kind,
                               double e_gs, const ControllerConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (e_gs == 0.0) throw std::invalid_argument("E_gs must be nonzero");

    ExperimentResult result;
    double j = 1.0;
    const double band = cfg.band_delta * std::abs(e_gs);
    int global_cycle = 0;

    ObjectiveEvaluator eval(
        [&](std::span<const double> params, std::uint64_t eval_seed) {
            return energy(params, j, eval_seed);
        },
        derive_seed(seed, 2));

    OptimizerState state;
    state.params = init_params(n_params, derive_seed(seed, 0));

    try {
        for (int pass = 0; pass <= cfg.max_recursions; ++pass) {
            result.recursions_used = pass;
            const auto on_cycle = [&](int, double e) {
                const double rel = relative_error(e, e_gs);
                result.trace.rows.push_back({global_cycle++, e, j, rel, pass});
                if (rel < cfg.stop_threshold) {  // rule 1
                    result.success = true;
                    return false;
                }
                if (e < e_gs - band) {  // rule 2: drive the curve up
                    j = std::max(cfg.j_min, j * (1.0 - cfg.j_step));
                } else if (e > e_gs + band) {  // rule 3: drive it down
                    j = std::min(cfg.j_max, j * (1.0 + cfg.j_step));
                }
                return true;
            };

            auto run = run_optimizer(kind, cfg.max_cycles_per_pass, std::move(state), eval,
                                     on_cycle, SpsaGains{}, derive_seed(seed, 100 + pass));
            state = std::move(run.state);
            if (result.success) break;
            // rule 4: warm restart from the final parameter vector
            state.have_current = false;
            state.cycle = 0;
        }
    } catch (const std::exception& ex) {
        result.error = ex.what();
        result.success = false;
    }

    result.evaluations = eval.evaluations();
    result.final_j = j;
    if (!result.trace.rows.empty()) {
        const auto& last = result.trace.rows.back();
        result.final_relative_error = last.rel_error;
        result.raw_energy_at_stop = last.energy / last.j;
    }
    return result;
}

ExperimentResult run_unmitigated(const EnergyFn& energy, int n_params, OptimizerKind kind,
                                 double e_gs, double stop_threshold, int max_cycles,
                                 std::uint64_t seed) {
    if (max_cycles < 1) throw std::invalid_argument("max_cycles must be >= 1");
    if (e_gs == 0.0) throw std::invalid_argument("E_gs must be nonzero");

    ExperimentResult result;
    ObjectiveEvaluator eval(
        [&](std::span<const double> params, std::uint64_t eval_seed) {
            return energy(params, 1.0, eval_seed);
        },
        derive_seed(seed, 2));

    OptimizerState state;
    state.params = init_params(n_params, derive_seed(seed, 0));

    try {
        run_optimizer(
            kind, max_cycles, std::move(state), eval,
            [&](int cycle, double e) {
                result.trace.rows.push_back({cycle, e, 1.0, relative_error(e, e_gs), 0});
                return true;
            },
            SpsaGains{}, derive_seed(seed, 100));
    } catch (const std::exception& ex) {
        result.error = ex.what();
    }

    result.evaluations = eval.evaluations();
    result.final_j = 1.0;
    result.success = result.error.empty() && result.trace.min_rel_error() < stop_threshold;
    if (!result.trace.rows.empty()) {
        const auto& last = result.trace.rows.back();
        result.final_relative_error = last.rel_error;
        result.raw_energy_at_stop = last.energy;
    }
    return result;
}

EnergyFn make_vqe_energy(const ParamCircuit& ansatz, const PauliSum& h, const NoiseModel& noise,
                         std::uint64_t shots_per_basis) {
    if (ansatz.n_qubits != h.n_qubits) {
        throw std::invalid_argument("ansatz and Hamiltonian width mismatch");
    }
    return [ansatz, h, noise, shots_per_basis](std::span<const double> params, double j,
                                               std::uint64_t eval_seed) {
        const PauliSum hj = h.with_uniform_interaction(j);
        if (shots_per_basis == 0) {
            StateVector sv(ansatz.n_qubits);
            sv.apply(ansatz.bind(params));
            return exact_expectation(sv, hj);
        }
        return estimate_energy(ansatz, params, hj, noise, shots_per_basis, eval_seed);
    };
}

ExperimentResult run_mitigated_vqe(const PauliSum& h, const ParamCircuit& ansatz,
                                   OptimizerKind kind, const NoiseModel& noise, double e_gs,
                                   const ControllerConfig& cfg, std::uint64_t shots_per_basis,
                                   std::uint64_t seed) {
    return run_mitigated(make_vqe_energy(ansatz, h.with_uniform_interaction(1.0), noise,
                                         shots_per_basis),
                         ansatz.n_params, kind, e_gs, cfg, seed);
}

ExperimentResult run_unmitigated_vqe(const PauliSum& h, const ParamCircuit& ansatz,
                                     OptimizerKind kind, const NoiseModel& noise, double e_gs,
                                     double stop_threshold, int max_cycles,
                                     std::uint64_t shots_per_basis, std::uint64_t seed) {
    return run_unmitigated(make_vqe_energy(ansatz, h.with_uniform_interaction(1.0), noise,
                                           shots_per_basis),
                           ansatz.n_params, kind, e_gs, stop_threshold, max_cycles, seed);
}

}  // namespace kvqe
