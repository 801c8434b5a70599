#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/noise.hpp"
#include "kvqe/pauli.hpp"

namespace kvqe {

// ---- Zero-noise extrapolation ----

enum class ZneFit { Linear, Richardson };

struct ZneConfig {
    std::vector<int> scale_factors = {1, 3, 5};  // odd, strictly increasing, first = 1
    ZneFit fit = ZneFit::Linear;

    void validate() const;
};

// Global unitary folding G -> G (G^dag G)^((scale-1)/2); scale must be odd.
std::vector<BoundGate> fold_circuit(std::span<const BoundGate> gates, int scale);

// Least-squares line (Linear) or exact polynomial interpolation
// (Richardson) through (scale, value), evaluated at scale -> 0.
double extrapolate_to_zero(std::span<const double> scales, std::span<const double> values,
                           ZneFit fit);

// Extrapolation driver over an arbitrary scale -> energy oracle; the
// simulator-backed zne_energy and the synthetic test oracles share it.
double zne_extrapolate(const std::function<double(int scale)>& measure, const ZneConfig& cfg);

double zne_energy(const ParamCircuit& circuit, std::span<const double> params, const PauliSum& h,
                  const NoiseModel& noise, const ZneConfig& cfg, std::uint64_t shots_per_basis,
                  std::uint64_t seed);

// ---- Twirled readout error extinction ----

struct ReadoutCalibration {
    std::vector<double> p_hat;  // per-qubit flip-rate estimate, < 0.5
    std::uint64_t calibration_shots = 0;
};

// Prepares |0...0> and |1...1>, measures both under readout noise and
// averages the flip rates. Throws if any estimate reaches 0.5.
ReadoutCalibration calibrate_readout(int n_qubits, const NoiseModel& noise, std::uint64_t shots,
                                     std::uint64_t seed);

// X-mask twirled measurement plus tensored 1/(1-2p) parity rescaling.
double trex_energy(const ParamCircuit& circuit, std::span<const double> params, const PauliSum& h,
                   const NoiseModel& noise, std::uint64_t calibration_shots,
                   std::uint64_t main_shots, std::uint64_t seed);

double trex_corrected_parity(const IndexedCounts& counts, const std::string& label,
                             const ReadoutCalibration& cal);

}  // namespace kvqe
