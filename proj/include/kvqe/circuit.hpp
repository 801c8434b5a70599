#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kvqe {

enum class GateKind { RY, RZ, CX };

// Parameterized gate: RY/RZ carry a parameter slot, CX carries a target.
struct ParamGate {
    GateKind kind;
    int qubit;   // rotation qubit, or CX control
    int target;  // CX target, -1 for rotations
    int slot;    // parameter slot, -1 for CX
};

// Gate with a concrete angle, ready for simulation.
struct BoundGate {
    GateKind kind;
    int qubit;
    int target;    // CX target, -1 for rotations
    double angle;  // 0 for CX
};

struct ParamCircuit {
    int n_qubits = 0;
    int n_params = 0;
    std::vector<ParamGate> gates;

    std::vector<BoundGate> bind(std::span<const double> params) const;
    int cx_count() const;
    void validate() const;  // every slot in [0, n_params) exactly once
};

// EfficientSU2 with linear entanglement:
//   RY layer, RZ layer, then reps x [CX chain (q,q+1), RY layer, RZ layer].
// n_params = 2 * n_qubits * (reps + 1).
ParamCircuit efficient_su2(int n_qubits, int reps);

// Uniform angles in [-pi, pi), deterministic per seed.
std::vector<double> init_params(int n_params, std::uint64_t seed);

// One gate per line: "ry <q> <slot>" / "rz <q> <slot>" / "cx <c> <t>".
std::string dump_circuit(const ParamCircuit& c);

}  // namespace kvqe
