#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kvqe/lattice.hpp"

namespace kvqe {

// One weighted Pauli string. The label is written with qubit 0 as the
// rightmost character (Qiskit ordering), e.g. "IIZZ" acts with Z on
// qubits 0 and 1 of a 4-qubit register.
struct PauliTerm {
    double coefficient = 0.0;
    std::string label;
};

// Sum of weighted Pauli strings with a single mutable prefactor J
// ("uniform interaction") multiplying every term's base weight.
struct PauliSum {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
    std::vector<double> base_weights;
    double uniform_interaction = 1.0;

    // Returns a copy with all coefficients rescaled to j * base_weight.
    // j must be positive; a sign flip would invert the spectrum.
    PauliSum with_uniform_interaction(double j) const;
};

// One measurement setting: every term in `term_indices` is diagonal
// after rotating all qubits into `basis`.
struct MeasurementGroup {
    char basis = 'Z';  // 'X', 'Y' or 'Z'
    std::vector<std::size_t> term_indices;
};

// H = J * sum_{(a,b) in edges} (X_a X_b + Y_a Y_b + Z_a Z_b) on the
// mapped qubits, identities elsewhere.
PauliSum build_heisenberg(const LatticeGraph& lattice, const QubitMapping& mapping, double j);

// Groups homogeneous terms by Pauli flavor. Throws on mixed-flavor terms.
std::vector<MeasurementGroup> measurement_bases(const PauliSum& h);

// CSV dump: "coefficient,label" per term.
void dump_hamiltonian_csv(const PauliSum& h, const std::string& path);

// Support qubits (non-identity positions) of term `label`.
std::vector<int> term_support(const std::string& label);

// Bitmask form of a Pauli string: P|i> = i^{n_y} * (-1)^{popcount(i & phase)} |i ^ flip>.
struct PauliMasks {
    std::size_t flip = 0;   // X and Y positions
    std::size_t phase = 0;  // Y and Z positions
    int n_y = 0;
};

PauliMasks pauli_masks(const std::string& label);

}  // namespace kvqe
