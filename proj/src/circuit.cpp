#include "kvqe/circuit.hpp"

#include <sstream>
#include <stdexcept>

#include "kvqe/rng.hpp"

namespace kvqe {

std::vector<BoundGate> ParamCircuit::bind(std::span<const double> params) const {
    if (static_cast<int>(params.size()) != n_params) {
        throw std::invalid_argument("parameter vector size does not match circuit");
    }
    std::vector<BoundGate> out;
    out.reserve(gates.size());
    for (const auto& g : gates) {
        if (g.kind == GateKind::CX) {
            out.push_back({GateKind::CX, g.qubit, g.target, 0.0});
        } else {
            out.push_back({g.kind, g.qubit, -1, params[g.slot]});
        }
    }
    return out;
}

int ParamCircuit::cx_count() const {
    int n = 0;
    for (const auto& g : gates) n += (g.kind == GateKind::CX) ? 1 : 0;
    return n;
}

void ParamCircuit::validate() const {
    std::vector<int> seen(n_params, 0);
    for (const auto& g : gates) {
        if (g.kind == GateKind::CX) {
            if (g.slot != -1) throw std::logic_error("CX gate must not carry a slot");
            continue;
        }
        if (g.slot < 0 || g.slot >= n_params) throw std::logic_error("slot index out of range");
        ++seen[g.slot];
    }
    for (const int c : seen) {
        if (c != 1) throw std::logic_error("each parameter slot must appear exactly once");
    }
}

ParamCircuit efficient_su2(int n_qubits, int reps) {
    if (n_qubits < 2) throw std::invalid_argument("EfficientSU2 needs at least 2 qubits");
    if (reps < 1) throw std::invalid_argument("EfficientSU2 needs at least 1 repetition");

    ParamCircuit c;
    c.n_qubits = n_qubits;
    c.n_params = 2 * n_qubits * (reps + 1);
    int slot = 0;
    auto rotation_layers = [&] {
        for (int q = 0; q < n_qubits; ++q) c.gates.push_back({GateKind::RY, q, -1, slot++});
        for (int q = 0; q < n_qubits; ++q) c.gates.push_back({GateKind::RZ, q, -1, slot++});
    };
    rotation_layers();
    for (int r = 0; r < reps; ++r) {
        for (int q = 0; q + 1 < n_qubits; ++q) c.gates.push_back({GateKind::CX, q, q + 1, -1});
        rotation_layers();
    }
    c.validate();
    return c;
}

std::vector<double> init_params(int n_params, std::uint64_t seed) {
    if (n_params <= 0) throw std::invalid_argument("n_params must be positive");
    Rng rng(seed);
    std::vector<double> out(n_params);
    constexpr double pi = 3.14159265358979323846;
    for (auto& x : out) x = -pi + 2 * pi * rng.uniform();
    return out;
}

std::string dump_circuit(const ParamCircuit& c) {
    std::ostringstream out;
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::RY: out << "ry " << g.qubit << " " << g.slot << "\n"; break;
            case GateKind::RZ: out << "rz " << g.qubit << " " << g.slot << "\n"; break;
            case GateKind::CX: out << "cx " << g.qubit << " " << g.target << "\n"; break;
        }
    }
    return out.str();
}

}  // namespace kvqe
