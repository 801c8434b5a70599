#include "kvqe/statevector.hpp"

#include <bit>
#include <stdexcept>

#include "kvqe/kernels.hpp"

namespace kvqe {

using cd = std::complex<double>;

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 16) {
        throw std::invalid_argument("StateVector supports 1..16 qubits");
    }
    amp_.assign(std::size_t{1} << n_qubits, cd{0.0, 0.0});
    amp_[0] = cd{1.0, 0.0};
}

void StateVector::reset() {
    std::fill(amp_.begin(), amp_.end(), cd{0.0, 0.0});
    amp_[0] = cd{1.0, 0.0};
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) throw std::out_of_range("qubit index out of range");
}

void StateVector::rotate_y(int q, double theta) {
    check_qubit(q);
    kernels::active().rotate_y(amp_.data(), amp_.size(), q, std::cos(theta / 2), std::sin(theta / 2));
}

void StateVector::rotate_z(int q, double theta) {
    check_qubit(q);
    kernels::active().rotate_z(amp_.data(), amp_.size(), q, std::cos(theta / 2), std::sin(theta / 2));
}

void StateVector::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("CX control equals target");
    kernels::active().cnot(amp_.data(), amp_.size(), control, target);
}

void StateVector::pauli_x(int q) {
    check_qubit(q);
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < amp_.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) std::swap(amp_[i], amp_[i + step]);
    }
}

void StateVector::pauli_y(int q) {
    check_qubit(q);
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < amp_.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const cd a = amp_[i];
            const cd b = amp_[i + step];
            amp_[i] = cd{0.0, -1.0} * b;
            amp_[i + step] = cd{0.0, 1.0} * a;
        }
    }
}

void StateVector::pauli_z(int q) {
    check_qubit(q);
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < amp_.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) amp_[i + step] = -amp_[i + step];
    }
}

void StateVector::apply(const BoundGate& g) {
    switch (g.kind) {
        case GateKind::RY: rotate_y(g.qubit, g.angle); break;
        case GateKind::RZ: rotate_z(g.qubit, g.angle); break;
        case GateKind::CX: cnot(g.qubit, g.target); break;
    }
}

void StateVector::apply(std::span<const BoundGate> gates) {
    for (const auto& g : gates) apply(g);
}

double StateVector::norm() const {
    return std::sqrt(kernels::active().norm_sqr(amp_.data(), amp_.size()));
}

void StateVector::probabilities(std::span<double> out) const {
    if (out.size() != amp_.size()) throw std::invalid_argument("probability buffer size mismatch");
    kernels::active().abs_sqr(amp_.data(), amp_.size(), out.data());
}

double exact_expectation(const StateVector& state, const std::string& label) {
    if (static_cast<int>(label.size()) != state.n_qubits()) {
        throw std::invalid_argument("Pauli label width does not match qubit count");
    }
    const PauliMasks m = pauli_masks(label);
    const auto amp = state.amplitudes();
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const double sign = (std::popcount(i & m.phase) & 1) ? -1.0 : 1.0;
        acc += std::conj(amp[i ^ m.flip]) * amp[i] * sign;
    }
    // i^{n_y} prefactor from Y = i|1><0| - i|0><1|
    static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return (acc * ipow[m.n_y & 3]).real();
}

double exact_expectation(const StateVector& state, const PauliSum& h) {
    if (h.n_qubits != state.n_qubits()) {
        throw std::invalid_argument("PauliSum width does not match state");
    }
    double e = 0.0;
    for (const auto& t : h.terms) e += t.coefficient * exact_expectation(state, t.label);
    return e;
}

}  // namespace kvqe
