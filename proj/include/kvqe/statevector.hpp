#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

// Dense statevector over up to 16 qubits. Qubit q is bit q of the
// amplitude index.
class StateVector {
public:
    explicit StateVector(int n_qubits);  // |0...0>

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amp_.size(); }
    std::span<const std::complex<double>> amplitudes() const { return amp_; }
    std::span<std::complex<double>> amplitudes() { return amp_; }

    void reset();  // back to |0...0>
    void rotate_y(int q, double theta);
    void rotate_z(int q, double theta);
    void cnot(int control, int target);
    void pauli_x(int q);
    void pauli_y(int q);
    void pauli_z(int q);
    void apply(const BoundGate& g);
    void apply(std::span<const BoundGate> gates);

    double norm() const;
    // out must have dim() entries; filled with |amp|^2.
    void probabilities(std::span<double> out) const;

private:
    int n_qubits_;
    std::vector<std::complex<double>> amp_;
    void check_qubit(int q) const;
};

// <psi| sum_k c_k P_k |psi> without sampling. Label width must equal
// the state's qubit count.
double exact_expectation(const StateVector& state, const PauliSum& h);

// <psi| P |psi> for a single Pauli string.
double exact_expectation(const StateVector& state, const std::string& label);

}  // namespace kvqe
