// Command-line surface: exact | run | batch | plot | dump-hamiltonian.
// Exit codes: 0 ok, 1 config error, 2 runtime failure, 3 batch finished
// with at least one failed trial.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "kvqe/exact.hpp"
#include "kvqe/harness.hpp"
#include "kvqe/lattice.hpp"

namespace fs = std::filesystem;
using namespace kvqe;

namespace {

RunConfig make_config(const std::string& config_path, std::optional<std::uint64_t> seed,
                      const std::string& out_dir) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return cfg;
}

void print_trial(const ExperimentResult& r) {
    std::printf("success            %s\n", r.success ? "true" : "false");
    std::printf("cycles             %zu\n", r.trace.rows.size());
    std::printf("final_rel_error    %.6g\n", r.final_relative_error);
    std::printf("final_J            %.6g\n", r.final_j);
    std::printf("raw_energy_at_stop %.6g\n", r.raw_energy_at_stop);
    std::printf("recursions_used    %d\n", r.recursions_used);
    std::printf("evaluations        %llu\n", static_cast<unsigned long long>(r.evaluations));
    if (!r.error.empty()) std::printf("error              %s\n", r.error.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kagome-lattice Heisenberg VQE laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--out", out_dir, "output directory override");

    auto* cmd_exact = app.add_subcommand("exact", "classical ground-state energy");
    auto* cmd_run = app.add_subcommand("run", "one experiment, trace to stdout or --out");
    auto* cmd_batch = app.add_subcommand("batch", "n_trials experiments + summary");
    auto* cmd_plot = app.add_subcommand("plot", "convergence plot data from a trace CSV");
    auto* cmd_dump = app.add_subcommand("dump-hamiltonian", "Hamiltonian terms as CSV");
    for (auto* sub : {cmd_exact, cmd_run, cmd_batch, cmd_plot, cmd_dump}) sub->fallthrough();

    std::string trace_path, plot_csv = "plot.csv", plot_svg;
    double plot_target = 0.0;
    cmd_plot->add_option("trace", trace_path, "input trace CSV")->required();
    cmd_plot->add_option("--plot-csv", plot_csv, "output CSV path");
    cmd_plot->add_option("--svg", plot_svg, "optional SVG rendering path");
    auto* opt_target = cmd_plot->add_option("--target", plot_target, "target energy line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const RunConfig cfg = make_config(config_path, seed, out_dir);

        if (cmd_exact->parsed()) {
            cfg.validate();
            const LatticeGraph lattice =
                cfg.lattice == "builtin" ? build_kagome_unit_cell() : load_lattice_file(cfg.lattice);
            const auto mapping = QubitMapping::identity(lattice.n_sites, cfg.n_qubits);
            const PauliSum h = build_heisenberg(lattice, mapping, 1.0);
            const auto gs = ground_state_energy(h, lattice.n_sites);
            std::printf("E_gs      %.12f\n", gs.energy);
            std::printf("residual  %.3e\n", gs.residual_norm);
            std::printf("method    %s\n", gs.method == EigsMethod::Dense ? "dense" : "lanczos");
            std::printf("dimension %zu\n", gs.dimension);
        } else if (cmd_run->parsed()) {
            cfg.validate();
            const auto result = run_single(cfg, derive_seed(cfg.seed, 0));
            print_trial(result);
            if (!cfg.out_dir.empty()) {
                fs::create_directories(cfg.out_dir);
                std::ofstream out(fs::path(cfg.out_dir) / "trace_0.csv");
                result.trace.write_csv(out);
            }
            if (!result.error.empty()) return 2;
        } else if (cmd_batch->parsed()) {
            const auto batch = run_batch(cfg);
            std::fputs(batch.summary.to_key_values().c_str(), stdout);
            if (batch.summary.failed > 0) return 3;
        } else if (cmd_plot->parsed()) {
            const VqeTrace trace = read_trace_csv(trace_path);
            if (trace.rows.empty()) throw std::runtime_error("trace has no rows: " + trace_path);
            double target = plot_target;
            if (opt_target->count() == 0) {
                cfg.validate();
                const LatticeGraph lattice = cfg.lattice == "builtin"
                                                 ? build_kagome_unit_cell()
                                                 : load_lattice_file(cfg.lattice);
                const auto mapping = QubitMapping::identity(lattice.n_sites, cfg.n_qubits);
                const PauliSum h = build_heisenberg(lattice, mapping, 1.0);
                target = ground_state_energy(h, lattice.n_sites, EigsMethod::Lanczos).energy;
            }
            emit_plot_data(trace, target, plot_csv, plot_svg);
            std::printf("wrote %s\n", plot_csv.c_str());
            if (!plot_svg.empty()) std::printf("wrote %s\n", plot_svg.c_str());
        } else if (cmd_dump->parsed()) {
            cfg.validate();
            const LatticeGraph lattice =
                cfg.lattice == "builtin" ? build_kagome_unit_cell() : load_lattice_file(cfg.lattice);
            const auto mapping = QubitMapping::identity(lattice.n_sites, cfg.n_qubits);
            const PauliSum h = build_heisenberg(lattice, mapping, 1.0);
            const std::string path =
                cfg.out_dir.empty() ? "hamiltonian.csv"
                                    : (fs::path(cfg.out_dir) / "hamiltonian.csv").string();
            if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
            dump_hamiltonian_csv(h, path);
            std::printf("wrote %s (%zu terms)\n", path.c_str(), h.terms.size());
        }
    } catch (const ConfigError& ex) {
        std::fprintf(stderr, "config error: %s\n", ex.what());
        return 1;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 0;
}
