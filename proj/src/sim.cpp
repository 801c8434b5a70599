#include "kvqe/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "kvqe/rng.hpp"
#include "kvqe/statevector.hpp"

namespace kvqe {

void NoiseModel::validate() const {
    if (p_cx < 0.0 || p_cx > 1.0 || p_readout < 0.0 || p_readout > 1.0) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
}

std::string index_to_bits(std::uint32_t index, int n_bits) {
    std::string s(n_bits, '0');
    for (int q = 0; q < n_bits; ++q) {
        if (index & (std::uint32_t{1} << q)) s[n_bits - 1 - q] = '1';
    }
    return s;
}

Counts IndexedCounts::to_counts() const {
    Counts c;
    c.n_bits = n_bits;
    c.shots = shots;
    for (const auto& [index, count] : entries) c.histogram[index_to_bits(index, n_bits)] = count;
    return c;
}

void Counts::to_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write counts CSV: " + path);
    out << "bitstring,count\n";
    for (const auto& [bits, count] : histogram) out << bits << "," << count << "\n";
}

std::vector<BoundGate> basis_change_gates(char basis, int n_qubits) {
    constexpr double half_pi = 1.57079632679489661923;
    std::vector<BoundGate> out;
    switch (basis) {
        case 'Z':
            break;
        case 'X':
            for (int q = 0; q < n_qubits; ++q) out.push_back({GateKind::RY, q, -1, -half_pi});
            break;
        case 'Y':
            for (int q = 0; q < n_qubits; ++q) {
                out.push_back({GateKind::RZ, q, -1, half_pi});
                out.push_back({GateKind::RY, q, -1, half_pi});
                out.push_back({GateKind::RZ, q, -1, -half_pi});
            }
            break;
        default:
            throw std::invalid_argument("measurement basis must be X, Y or Z");
    }
    return out;
}

namespace {

void apply_pauli(StateVector& sv, int kind, int q) {
    switch (kind) {
        case 1: sv.pauli_x(q); break;
        case 2: sv.pauli_y(q); break;
        case 3: sv.pauli_z(q); break;
        default: break;
    }
}

std::uint32_t sample_index(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    return static_cast<std::uint32_t>(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1));
}

void build_cdf(const StateVector& sv, std::vector<double>& probs, std::vector<double>& cdf) {
    probs.resize(sv.dim());
    sv.probabilities(probs);
    cdf.resize(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
}

}  // namespace

IndexedCounts run_noisy_shots_indexed(std::span<const BoundGate> gates, int n_qubits, char basis,
                                      const NoiseModel& noise, std::uint64_t shots,
                                      std::uint64_t seed, bool readout_twirl) {
    noise.validate();
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    const auto basis_gates = basis_change_gates(basis, n_qubits);

    std::vector<BoundGate> full(gates.begin(), gates.end());
    full.insert(full.end(), basis_gates.begin(), basis_gates.end());

    // Clean pass. Snapshots taken right after each CX: a depolarizing
    // event at CX k lets the shot resume from snapshot k instead of
    // replaying the prefix.
    StateVector sv(n_qubits);
    std::vector<std::size_t> cx_positions;
    std::vector<std::vector<std::complex<double>>> snapshots;
    for (std::size_t gi = 0; gi < full.size(); ++gi) {
        sv.apply(full[gi]);
        if (full[gi].kind == GateKind::CX && noise.p_cx > 0.0) {
            cx_positions.push_back(gi);
            snapshots.emplace_back(sv.amplitudes().begin(), sv.amplitudes().end());
        }
    }
    std::vector<double> probs, clean_cdf, noisy_cdf;
    build_cdf(sv, probs, clean_cdf);

    const std::uint32_t n_mask = (n_qubits == 32) ? ~0u : ((std::uint32_t{1} << n_qubits) - 1);
    std::vector<std::uint64_t> hist(sv.dim(), 0);
    Rng rng(seed);
    StateVector scratch(n_qubits);
    std::vector<char> events(cx_positions.size());

    for (std::uint64_t s = 0; s < shots; ++s) {
        int first_event = -1;
        for (std::size_t k = 0; k < cx_positions.size(); ++k) {
            events[k] = rng.bernoulli(noise.p_cx) ? 1 : 0;
            if (events[k] && first_event < 0) first_event = static_cast<int>(k);
        }

        std::uint32_t outcome;
        if (first_event < 0) {
            outcome = sample_index(clean_cdf, rng.uniform());
        } else {
            std::copy(snapshots[first_event].begin(), snapshots[first_event].end(),
                      scratch.amplitudes().begin());
            std::size_t next_cx = static_cast<std::size_t>(first_event);
            for (std::size_t gi = cx_positions[next_cx];; ++gi) {
                if (next_cx < cx_positions.size() && gi == cx_positions[next_cx]) {
                    if (events[next_cx]) {
                        // one of the 15 non-identity two-qubit Paulis, uniform
                        const int choice = 1 + static_cast<int>(rng.below(15));
                        const auto& cx = full[cx_positions[next_cx]];
                        apply_pauli(scratch, choice / 4, cx.qubit);
                        apply_pauli(scratch, choice % 4, cx.target);
                    }
                    ++next_cx;
                }
                if (gi + 1 >= full.size()) break;
                scratch.apply(full[gi + 1]);
            }
            build_cdf(scratch, probs, noisy_cdf);
            outcome = sample_index(noisy_cdf, rng.uniform());
        }

        std::uint32_t mask = 0;
        if (readout_twirl) mask = static_cast<std::uint32_t>(rng.next_u64()) & n_mask;
        outcome ^= mask;
        for (int q = 0; q < n_qubits; ++q) {
            if (rng.bernoulli(noise.p_readout)) outcome ^= (std::uint32_t{1} << q);
        }
        outcome ^= mask;  // classical de-masking
        ++hist[outcome];
    }

    IndexedCounts out;
    out.n_bits = n_qubits;
    out.shots = shots;
    for (std::uint32_t i = 0; i < hist.size(); ++i) {
        if (hist[i]) out.entries.emplace_back(i, hist[i]);
    }
    return out;
}

Counts run_noisy_shots(const ParamCircuit& circuit, std::span<const double> params, char basis,
                       const NoiseModel& noise, std::uint64_t shots, std::uint64_t seed,
                       bool readout_twirl) {
    const auto bound = circuit.bind(params);
    return run_noisy_shots_indexed(bound, circuit.n_qubits, basis, noise, shots, seed,
                                   readout_twirl)
        .to_counts();
}

double parity_expectation(const IndexedCounts& counts, const std::string& label) {
    std::uint32_t mask = 0;
    for (const int q : term_support(label)) mask |= (std::uint32_t{1} << q);
    std::int64_t balance = 0;
    for (const auto& [index, count] : counts.entries) {
        balance += (std::popcount(index & mask) & 1) ? -static_cast<std::int64_t>(count)
                                                     : static_cast<std::int64_t>(count);
    }
    return static_cast<double>(balance) / static_cast<double>(counts.shots);
}

double estimate_energy_bound(std::span<const BoundGate> gates, const PauliSum& h,
                             const NoiseModel& noise, std::uint64_t shots_per_basis,
                             std::uint64_t seed) {
    const auto groups = measurement_bases(h);
    double energy = 0.0;
    // identity terms contribute their coefficient directly
    for (const auto& t : h.terms) {
        if (term_support(t.label).empty()) energy += t.coefficient;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto counts = run_noisy_shots_indexed(gates, h.n_qubits, groups[gi].basis, noise,
                                                    shots_per_basis, derive_seed(seed, gi));
        for (const std::size_t k : groups[gi].term_indices) {
            energy += h.terms[k].coefficient * parity_expectation(counts, h.terms[k].label);
        }
    }
    return energy;
}

double estimate_energy(const ParamCircuit& circuit, std::span<const double> params,
                       const PauliSum& h, const NoiseModel& noise, std::uint64_t shots_per_basis,
                       std::uint64_t seed) {
    if (circuit.n_qubits != h.n_qubits) {
        throw std::invalid_argument("circuit and Hamiltonian width mismatch");
    }
    const auto bound = circuit.bind(params);
    return estimate_energy_bound(bound, h, noise, shots_per_basis, seed);
}

}  // namespace kvqe
