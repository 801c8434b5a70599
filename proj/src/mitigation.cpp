#include "kvqe/mitigation.hpp"

#include <cmath>
#include <stdexcept>

#include "kvqe/rng.hpp"

namespace kvqe {

void ZneConfig::validate() const {
    if (scale_factors.size() < 2) throw std::invalid_argument("ZNE needs at least 2 scale factors");
    if (scale_factors.front() != 1) throw std::invalid_argument("first ZNE scale must be 1");
    for (std::size_t i = 0; i < scale_factors.size(); ++i) {
        if (scale_factors[i] % 2 != 1) throw std::invalid_argument("ZNE scales must be odd");
        if (i > 0 && scale_factors[i] <= scale_factors[i - 1]) {
            throw std::invalid_argument("ZNE scales must be strictly increasing");
        }
    }
}

std::vector<BoundGate> fold_circuit(std::span<const BoundGate> gates, int scale) {
    if (scale < 1 || scale % 2 != 1) throw std::invalid_argument("fold scale must be odd");
    std::vector<BoundGate> out(gates.begin(), gates.end());
    std::vector<BoundGate> adjoint(gates.rbegin(), gates.rend());
    for (auto& g : adjoint) {
        if (g.kind != GateKind::CX) g.angle = -g.angle;
    }
    for (int rep = 0; rep < (scale - 1) / 2; ++rep) {
        out.insert(out.end(), adjoint.begin(), adjoint.end());
        out.insert(out.end(), gates.begin(), gates.end());
    }
    return out;
}

double extrapolate_to_zero(std::span<const double> scales, std::span<const double> values,
                           ZneFit fit) {
    const std::size_t n = scales.size();
    if (n != values.size() || n < 2) throw std::invalid_argument("need >= 2 extrapolation points");
    if (fit == ZneFit::Linear) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += scales[i];
            sy += values[i];
            sxx += scales[i] * scales[i];
            sxy += scales[i] * values[i];
        }
        const double denom = n * sxx - sx * sx;
        const double slope = (n * sxy - sx * sy) / denom;
        return (sy - slope * sx) / n;
    }
    // Richardson: Lagrange interpolation evaluated at 0
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) w *= -scales[j] / (scales[i] - scales[j]);
        }
        acc += w * values[i];
    }
    return acc;
}

double zne_extrapolate(const std::function<double(int)>& measure, const ZneConfig& cfg) {
    cfg.validate();
    std::vector<double> scales, values;
    for (const int s : cfg.scale_factors) {
        scales.push_back(static_cast<double>(s));
        values.push_back(measure(s));
    }
    return extrapolate_to_zero(scales, values, cfg.fit);
}

double zne_energy(const ParamCircuit& circuit, std::span<const double> params, const PauliSum& h,
                  const NoiseModel& noise, const ZneConfig& cfg, std::uint64_t shots_per_basis,
                  std::uint64_t seed) {
    const auto bound = circuit.bind(params);
    int index = 0;
    return zne_extrapolate(
        [&](int scale) {
            const auto folded = fold_circuit(bound, scale);
            return estimate_energy_bound(folded, h, noise, shots_per_basis,
                                         derive_seed(seed, index++));
        },
        cfg);
}

ReadoutCalibration calibrate_readout(int n_qubits, const NoiseModel& noise, std::uint64_t shots,
                                     std::uint64_t seed) {
    constexpr double pi = 3.14159265358979323846;
    const std::vector<BoundGate> prep_zero;
    std::vector<BoundGate> prep_one;
    for (int q = 0; q < n_qubits; ++q) prep_one.push_back({GateKind::RY, q, -1, pi});

    const auto c0 = run_noisy_shots_indexed(prep_zero, n_qubits, 'Z', noise, shots,
                                            derive_seed(seed, 0));
    const auto c1 = run_noisy_shots_indexed(prep_one, n_qubits, 'Z', noise, shots,
                                            derive_seed(seed, 1));

    ReadoutCalibration cal;
    cal.calibration_shots = shots;
    cal.p_hat.resize(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint32_t bit = std::uint32_t{1} << q;
        std::uint64_t flips = 0;
        for (const auto& [index, count] : c0.entries) {
            if (index & bit) flips += count;  // prepared 0, read 1
        }
        for (const auto& [index, count] : c1.entries) {
            if (!(index & bit)) flips += count;  // prepared 1, read 0
        }
        const double p = static_cast<double>(flips) / static_cast<double>(2 * shots);
        if (p >= 0.5) throw std::runtime_error("readout calibration failed: flip rate >= 0.5");
        cal.p_hat[q] = p;
    }
    return cal;
}

double trex_corrected_parity(const IndexedCounts& counts, const std::string& label,
                             const ReadoutCalibration& cal) {
    double factor = 1.0;
    for (const int q : term_support(label)) {
        factor *= 1.0 - 2.0 * cal.p_hat[q];
    }
    return parity_expectation(counts, label) / factor;
}

double trex_energy(const ParamCircuit& circuit, std::span<const double> params, const PauliSum& h,
                   const NoiseModel& noise, std::uint64_t calibration_shots,
                   std::uint64_t main_shots, std::uint64_t seed) {
    const auto cal = calibrate_readout(h.n_qubits, noise, calibration_shots, derive_seed(seed, 0));
    const auto bound = circuit.bind(params);
    const auto groups = measurement_bases(h);

    double energy = 0.0;
    for (const auto& t : h.terms) {
        if (term_support(t.label).empty()) energy += t.coefficient;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto counts =
            run_noisy_shots_indexed(bound, h.n_qubits, groups[gi].basis, noise, main_shots,
                                    derive_seed(seed, 1 + gi), /*readout_twirl=*/true);
        for (const std::size_t k : groups[gi].term_indices) {
            energy += h.terms[k].coefficient * trex_corrected_parity(counts, h.terms[k].label, cal);
        }
    }
    return energy;
}

}  // namespace kvqe
