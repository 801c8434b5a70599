#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

// Stochastic noise: each CX triggers, with probability p_cx, one uniformly
// random non-identity two-qubit Pauli on its qubit pair; each measured bit
// flips independently with probability p_readout.
struct NoiseModel {
    double p_cx = 0.015;
    double p_readout = 0.03;  // calibration default: twice p_cx

    void validate() const;
    static NoiseModel noiseless() { return {0.0, 0.0}; }
};

// Histogram of measured bitstrings. Keys are n_bits characters, leftmost
// character = highest qubit (same ordering as Pauli labels).
struct Counts {
    int n_bits = 0;
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> histogram;

    void to_csv(const std::string& path) const;
};

// Sparse index-keyed histogram; the fast path used internally by the
// energy estimator.
struct IndexedCounts {
    int n_bits = 0;
    std::uint64_t shots = 0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> entries;  // sorted by index

    Counts to_counts() const;
};

// Basis-change rotations so that measuring Z afterwards measures `basis`:
// X: RY(-pi/2); Y: RZ(pi/2), RY(pi/2), RZ(-pi/2) (an RX(pi/2)); Z: none.
std::vector<BoundGate> basis_change_gates(char basis, int n_qubits);

// One stochastic trajectory per shot, deterministic in `seed`. With
// `readout_twirl`, a random X mask is applied before readout noise and
// removed classically afterwards.
IndexedCounts run_noisy_shots_indexed(std::span<const BoundGate> gates, int n_qubits, char basis,
                                      const NoiseModel& noise, std::uint64_t shots,
                                      std::uint64_t seed, bool readout_twirl = false);

Counts run_noisy_shots(const ParamCircuit& circuit, std::span<const double> params, char basis,
                       const NoiseModel& noise, std::uint64_t shots, std::uint64_t seed,
                       bool readout_twirl = false);

// Parity expectation sum_k c_k <P_k> from one Counts per measurement
// basis; shots_per_basis counts per group, sub-seeded from `seed`.
double estimate_energy(const ParamCircuit& circuit, std::span<const double> params,
                       const PauliSum& h, const NoiseModel& noise, std::uint64_t shots_per_basis,
                       std::uint64_t seed);

double estimate_energy_bound(std::span<const BoundGate> gates, const PauliSum& h,
                             const NoiseModel& noise, std::uint64_t shots_per_basis,
                             std::uint64_t seed);

// <P> for one term from an indexed histogram (parity of the support bits).
double parity_expectation(const IndexedCounts& counts, const std::string& label);

std::string index_to_bits(std::uint32_t index, int n_bits);

}  // namespace kvqe
