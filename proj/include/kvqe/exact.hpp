#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kvqe/pauli.hpp"

namespace kvqe {

enum class EigsMethod { Dense, Lanczos };

struct GroundStateResult {
    double energy = 0.0;
    double residual_norm = 0.0;  // ||H v - E v|| of the returned eigenpair
    EigsMethod method = EigsMethod::Dense;
    std::size_t dimension = 0;
};

// y = H x on the 2^active_qubits space. h must act trivially outside.
void apply_pauli_sum(const PauliSum& h, int active_qubits,
                     std::span<const std::complex<double>> x,
                     std::span<std::complex<double>> y);

// Minimum eigenvalue of h restricted to the active space. Dense
// diagonalization up to dimension 4096, matrix-free Lanczos with full
// reorthogonalization above (or on request).
GroundStateResult ground_state_energy(const PauliSum& h, int active_qubits,
                                      std::optional<EigsMethod> force = std::nullopt);

// Fast path for magnetization-conserving sums: dense diagonalization
// restricted to the sum-Z = 0 sector (popcount = n/2 basis states).
GroundStateResult ground_state_energy_sz0(const PauliSum& h, int active_qubits);

// |e - e_gs| / |e_gs|; the success metric used throughout.
double relative_error(double e, double e_gs);

}  // namespace kvqe
