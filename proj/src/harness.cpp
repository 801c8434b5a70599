#include "kvqe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "kvqe/exact.hpp"
#include "kvqe/lattice.hpp"

namespace kvqe {

namespace fs = std::filesystem;

std::string to_string(MitigationMode m) {
    switch (m) {
        case MitigationMode::None: return "none";
        case MitigationMode::Controller: return "controller";
        case MitigationMode::Zne: return "zne";
        case MitigationMode::Trex: return "trex";
    }
    return "none";
}

MitigationMode mitigation_mode_from_string(const std::string& s) {
    if (s == "none") return MitigationMode::None;
    if (s == "controller") return MitigationMode::Controller;
    if (s == "zne") return MitigationMode::Zne;
    if (s == "trex") return MitigationMode::Trex;
    throw ConfigError("mode: expected none|controller|zne|trex, got '" + s + "'");
}

void RunConfig::validate() const {
    if (n_trials < 1) throw ConfigError("n_trials: must be >= 1");
    if (n_qubits < 2 || n_qubits > 16) throw ConfigError("n_qubits: must be in 2..16");
    if (ansatz_reps < 1 || ansatz_reps > 3) throw ConfigError("ansatz_reps: must be in 1..3");
    if (lattice != "builtin" && !fs::exists(lattice)) {
        throw ConfigError("lattice: file does not exist: " + lattice);
    }
    if (lattice == "builtin" && n_qubits < 12) {
        throw ConfigError("n_qubits: the built-in cell needs at least 12 qubits");
    }
    if (shots == 0 && (mode == MitigationMode::Zne || mode == MitigationMode::Trex)) {
        throw ConfigError("shots: zne/trex modes need sampled shots (> 0)");
    }
    try {
        noise.validate();
        controller.validate();
        zne.validate();
    } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
    }
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "lattice") {
            cfg.lattice = value;
        } else if (key == "n_qubits") {
            cfg.n_qubits = static_cast<int>(parse_int(key, value));
        } else if (key == "ansatz_reps") {
            cfg.ansatz_reps = static_cast<int>(parse_int(key, value));
        } else if (key == "optimizer") {
            if (value == "nft") {
                cfg.optimizer = OptimizerKind::NFT;
            } else if (value == "spsa") {
                cfg.optimizer = OptimizerKind::SPSA;
            } else {
                throw ConfigError("optimizer: expected nft|spsa, got '" + value + "'");
            }
        } else if (key == "p_cx") {
            cfg.noise.p_cx = parse_double(key, value);
        } else if (key == "p_readout") {
            cfg.noise.p_readout = parse_double(key, value);
        } else if (key == "shots") {
            cfg.shots = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "mode") {
            cfg.mode = mitigation_mode_from_string(value);
        } else if (key == "n_trials") {
            cfg.n_trials = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "stop_threshold") {
            cfg.controller.stop_threshold = parse_double(key, value);
        } else if (key == "band_delta") {
            cfg.controller.band_delta = parse_double(key, value);
        } else if (key == "j_step") {
            cfg.controller.j_step = parse_double(key, value);
        } else if (key == "j_min") {
            cfg.controller.j_min = parse_double(key, value);
        } else if (key == "j_max") {
            cfg.controller.j_max = parse_double(key, value);
        } else if (key == "max_recursions") {
            cfg.controller.max_recursions = static_cast<int>(parse_int(key, value));
        } else if (key == "max_cycles") {
            cfg.controller.max_cycles_per_pass = static_cast<int>(parse_int(key, value));
        } else if (key == "calibration_shots") {
            cfg.calibration_shots = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_int(key, value));
        } else if (key == "zne_scales") {
            cfg.zne.scale_factors.clear();
            std::istringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                cfg.zne.scale_factors.push_back(static_cast<int>(parse_int(key, trim(tok))));
            }
        } else if (key == "zne_fit") {
            if (value == "linear") {
                cfg.zne.fit = ZneFit::Linear;
            } else if (value == "richardson") {
                cfg.zne.fit = ZneFit::Richardson;
            } else {
                throw ConfigError("zne_fit: expected linear|richardson, got '" + value + "'");
            }
        } else {
            throw ConfigError("unknown config key: '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string write_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "lattice = " << cfg.lattice << "\n";
    out << "n_qubits = " << cfg.n_qubits << "\n";
    out << "ansatz_reps = " << cfg.ansatz_reps << "\n";
    out << "optimizer = " << (cfg.optimizer == OptimizerKind::NFT ? "nft" : "spsa") << "\n";
    out << "p_cx = " << fmt(cfg.noise.p_cx) << "\n";
    out << "p_readout = " << fmt(cfg.noise.p_readout) << "\n";
    out << "shots = " << cfg.shots << "\n";
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "n_trials = " << cfg.n_trials << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "out_dir = " << cfg.out_dir << "\n";
    out << "stop_threshold = " << fmt(cfg.controller.stop_threshold) << "\n";
    out << "band_delta = " << fmt(cfg.controller.band_delta) << "\n";
    out << "j_step = " << fmt(cfg.controller.j_step) << "\n";
    out << "j_min = " << fmt(cfg.controller.j_min) << "\n";
    out << "j_max = " << fmt(cfg.controller.j_max) << "\n";
    out << "max_recursions = " << cfg.controller.max_recursions << "\n";
    out << "max_cycles = " << cfg.controller.max_cycles_per_pass << "\n";
    out << "calibration_shots = " << cfg.calibration_shots << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "zne_scales = ";
    for (std::size_t i = 0; i < cfg.zne.scale_factors.size(); ++i) {
        out << (i ? "," : "") << cfg.zne.scale_factors[i];
    }
    out << "\n";
    out << "zne_fit = " << (cfg.zne.fit == ZneFit::Linear ? "linear" : "richardson") << "\n";
    return out.str();
}

std::string ExperimentSummary::to_key_values() const {
    std::ostringstream out;
    out << "total = " << total << "\n";
    out << "failed = " << failed << "\n";
    out << "success_rate = " << fmt(success_rate) << "\n";
    out << "avg_cycles = " << fmt(avg_cycles) << "\n";
    out << "total_evaluations = " << total_evaluations << "\n";
    out << "wall_time_seconds = " << fmt(wall_time_seconds) << "\n";
    return out.str();
}

namespace {

struct Problem {
    PauliSum hamiltonian;
    ParamCircuit ansatz;
    double e_gs;
};

Problem build_problem(const RunConfig& cfg) {
    const LatticeGraph lattice =
        cfg.lattice == "builtin" ? build_kagome_unit_cell() : load_lattice_file(cfg.lattice);
    if (lattice.n_sites > cfg.n_qubits) {
        throw ConfigError("n_qubits: register smaller than lattice site count");
    }
    const auto mapping = QubitMapping::identity(lattice.n_sites, cfg.n_qubits);
    Problem p;
    p.hamiltonian = build_heisenberg(lattice, mapping, 1.0);
    p.ansatz = efficient_su2(lattice.n_sites, cfg.ansatz_reps);
    p.ansatz.n_qubits = cfg.n_qubits;  // idle register qubits receive no gates
    // Lanczos: fast and within the 1e-8 residual contract
    p.e_gs = ground_state_energy(p.hamiltonian, lattice.n_sites, EigsMethod::Lanczos).energy;
    return p;
}

ExperimentResult run_with_problem(const RunConfig& cfg, const Problem& p,
                                  std::uint64_t trial_seed) {
    switch (cfg.mode) {
        case MitigationMode::Controller:
            return run_mitigated_vqe(p.hamiltonian, p.ansatz, cfg.optimizer, cfg.noise, p.e_gs,
                                     cfg.controller, cfg.shots, trial_seed);
        case MitigationMode::None:
            return run_unmitigated_vqe(p.hamiltonian, p.ansatz, cfg.optimizer, cfg.noise, p.e_gs,
                                       cfg.controller.stop_threshold,
                                       cfg.controller.max_cycles_per_pass, cfg.shots, trial_seed);
        case MitigationMode::Zne: {
            const EnergyFn energy = [&cfg, &p](std::span<const double> params, double j,
                                               std::uint64_t eval_seed) {
                return zne_energy(p.ansatz, params, p.hamiltonian.with_uniform_interaction(j),
                                  cfg.noise, cfg.zne, cfg.shots, eval_seed);
            };
            return run_unmitigated(energy, p.ansatz.n_params, cfg.optimizer, p.e_gs,
                                   cfg.controller.stop_threshold,
                                   cfg.controller.max_cycles_per_pass, trial_seed);
        }
        case MitigationMode::Trex: {
            const EnergyFn energy = [&cfg, &p](std::span<const double> params, double j,
                                               std::uint64_t eval_seed) {
                return trex_energy(p.ansatz, params, p.hamiltonian.with_uniform_interaction(j),
                                   cfg.noise, cfg.calibration_shots, cfg.shots, eval_seed);
            };
            return run_unmitigated(energy, p.ansatz.n_params, cfg.optimizer, p.e_gs,
                                   cfg.controller.stop_threshold,
                                   cfg.controller.max_cycles_per_pass, trial_seed);
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<std::string> trial_summary_comments(const ExperimentResult& r) {
    std::vector<std::string> out;
    out.push_back(std::string("success = ") + (r.success ? "true" : "false"));
    out.push_back("final_relative_error = " + fmt(r.final_relative_error));
    out.push_back("final_J = " + fmt(r.final_j));
    out.push_back("raw_energy_at_stop = " + fmt(r.raw_energy_at_stop));
    out.push_back("recursions_used = " + std::to_string(r.recursions_used));
    out.push_back("evaluations = " + std::to_string(r.evaluations));
    if (!r.error.empty()) out.push_back("error = " + r.error);
    return out;
}

}  // namespace

ExperimentResult run_single(const RunConfig& cfg, std::uint64_t trial_seed) {
    cfg.validate();
    const Problem p = build_problem(cfg);
    return run_with_problem(cfg, p, trial_seed);
}

BatchResult run_batch(const RunConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Problem problem = build_problem(cfg);

    BatchResult batch;
    batch.trials.resize(cfg.n_trials);
    std::atomic<int> next{0};
    const int n_workers = std::max(
        1, std::min(cfg.n_trials, cfg.workers > 0
                                      ? cfg.workers
                                      : static_cast<int>(std::thread::hardware_concurrency())));

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.n_trials) return;
            batch.trials[i] = run_with_problem(cfg, problem, derive_seed(cfg.seed, i));
        }
    };
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    auto& s = batch.summary;
    s.total = cfg.n_trials;
    double cycles = 0.0;
    for (const auto& r : batch.trials) {
        if (!r.success) ++s.failed;
        cycles += static_cast<double>(r.trace.rows.size());
        s.total_evaluations += r.evaluations;
    }
    s.success_rate = static_cast<double>(s.total - s.failed) / static_cast<double>(s.total);
    s.avg_cycles = cycles / static_cast<double>(s.total);
    s.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // single collector writes all files
    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        for (int i = 0; i < cfg.n_trials; ++i) {
            const auto path = fs::path(cfg.out_dir) / ("trace_" + std::to_string(i) + ".csv");
            try {
                std::ofstream out(path);
                if (!out) throw std::runtime_error("cannot open " + path.string());
                const auto comments = trial_summary_comments(batch.trials[i]);
                batch.trials[i].trace.write_csv(out, comments);
            } catch (const std::exception& ex) {
                std::cerr << "trial " << i << ": " << ex.what() << "\n";
            }
        }
        try {
            std::ofstream out(fs::path(cfg.out_dir) / "summary.txt");
            out << s.to_key_values();
        } catch (const std::exception& ex) {
            std::cerr << "summary: " << ex.what() << "\n";
        }
    }
    return batch;
}

void emit_plot_data(const VqeTrace& trace, double target, const std::string& csv_path,
                    const std::string& svg_path) {
    if (trace.rows.empty()) throw std::invalid_argument("cannot plot an empty trace");
    {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write plot CSV: " + csv_path);
        out << "cycle,energy,target\n";
        int last_recursion = 0;
        for (const auto& r : trace.rows) {
            if (r.recursion != last_recursion) {
                out << "# recursion " << r.recursion << " starts at cycle " << r.cycle << "\n";
                last_recursion = r.recursion;
            }
            out << r.cycle << "," << fmt(r.energy) << "," << fmt(target) << "\n";
        }
    }
    if (svg_path.empty()) return;

    // minimal self-contained rendering: energy polyline + target line
    double emin = target, emax = target;
    for (const auto& r : trace.rows) {
        emin = std::min(emin, r.energy);
        emax = std::max(emax, r.energy);
    }
    const double pad = 0.05 * std::max(1e-9, emax - emin);
    emin -= pad;
    emax += pad;
    const double w = 640, h = 400, ml = 50, mb = 30;
    const auto sx = [&](double cycle) {
        return ml + (w - ml - 10) * (cycle - 1) /
                   std::max<double>(1.0, trace.rows.back().cycle - 1);
    };
    const auto sy = [&](double e) { return (h - mb) - (h - mb - 10) * (e - emin) / (emax - emin); };

    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot write SVG: " + svg_path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << sx(1) << "' y1='" << sy(target) << "' x2='" << w - 10 << "' y2='"
        << sy(target) << "' stroke='red' stroke-dasharray='4'/>\n";
    out << "<polyline fill='none' stroke='steelblue' points='";
    for (const auto& r : trace.rows) out << sx(r.cycle) << "," << sy(r.energy) << " ";
    out << "'/>\n";
    int last_recursion = 0;
    for (const auto& r : trace.rows) {
        if (r.recursion != last_recursion) {
            out << "<line x1='" << sx(r.cycle) << "' y1='10' x2='" << sx(r.cycle) << "' y2='"
                << h - mb << "' stroke='gray' stroke-dasharray='2'/>\n";
            last_recursion = r.recursion;
        }
    }
    out << "<text x='" << ml << "' y='" << h - 8 << "' font-size='12'>cycle</text>\n";
    out << "<text x='8' y='20' font-size='12'>energy</text>\n";
    out << "</svg>\n";
}

double two_proportion_z(std::uint64_t succ_a, std::uint64_t n_a, std::uint64_t succ_b,
                        std::uint64_t n_b) {
    const double pa = static_cast<double>(succ_a) / static_cast<double>(n_a);
    const double pb = static_cast<double>(succ_b) / static_cast<double>(n_b);
    const double pool =
        static_cast<double>(succ_a + succ_b) / static_cast<double>(n_a + n_b);
    const double se = std::sqrt(pool * (1.0 - pool) *
                                (1.0 / static_cast<double>(n_a) + 1.0 / static_cast<double>(n_b)));
    return (pa - pb) / se;
}

}  // namespace kvqe
