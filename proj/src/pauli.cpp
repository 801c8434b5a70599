#include "kvqe/pauli.hpp"

#include <fstream>
#include <stdexcept>

namespace kvqe {

PauliSum PauliSum::with_uniform_interaction(double j) const {
    if (j <= 0.0) {
        throw std::invalid_argument("uniform interaction must stay positive");
    }
    PauliSum out = *this;
    out.uniform_interaction = j;
    for (std::size_t i = 0; i < out.terms.size(); ++i) {
        out.terms[i].coefficient = j * out.base_weights[i];
    }
    return out;
}

PauliSum build_heisenberg(const LatticeGraph& lattice, const QubitMapping& mapping, double j) {
    lattice.validate();
    mapping.validate(lattice.n_sites);
    if (j <= 0.0) throw std::invalid_argument("uniform interaction must be positive");

    PauliSum h;
    h.n_qubits = mapping.n_qubits;
    h.uniform_interaction = j;
    const char flavors[3] = {'X', 'Y', 'Z'};
    for (const auto& [a, b] : lattice.edges) {
        const int qa = mapping.site_to_qubit[a];
        const int qb = mapping.site_to_qubit[b];
        for (const char f : flavors) {
            std::string label(h.n_qubits, 'I');
            label[label.size() - 1 - qa] = f;
            label[label.size() - 1 - qb] = f;
            h.terms.push_back({j * 1.0, std::move(label)});
            h.base_weights.push_back(1.0);
        }
    }
    return h;
}

std::vector<int> term_support(const std::string& label) {
    std::vector<int> support;
    const int n = static_cast<int>(label.size());
    for (int q = 0; q < n; ++q) {
        if (label[n - 1 - q] != 'I') support.push_back(q);
    }
    return support;
}

PauliMasks pauli_masks(const std::string& label) {
    PauliMasks m;
    const int n = static_cast<int>(label.size());
    for (int q = 0; q < n; ++q) {
        const char c = label[n - 1 - q];
        const std::size_t bit = std::size_t{1} << q;
        switch (c) {
            case 'I': break;
            case 'X': m.flip |= bit; break;
            case 'Y': m.flip |= bit; m.phase |= bit; ++m.n_y; break;
            case 'Z': m.phase |= bit; break;
            default: throw std::invalid_argument("invalid Pauli character in label");
        }
    }
    return m;
}

std::vector<MeasurementGroup> measurement_bases(const PauliSum& h) {
    MeasurementGroup groups[3] = {{'X', {}}, {'Y', {}}, {'Z', {}}};
    for (std::size_t k = 0; k < h.terms.size(); ++k) {
        char flavor = 0;
        for (const char c : h.terms[k].label) {
            if (c == 'I') continue;
            if (flavor == 0) {
                flavor = c;
            } else if (c != flavor) {
                throw std::invalid_argument("mixed-flavor Pauli term cannot be basis-grouped");
            }
        }
        if (flavor == 0) continue;  // identity term, measured in any basis
        groups[flavor == 'X' ? 0 : flavor == 'Y' ? 1 : 2].term_indices.push_back(k);
    }
    std::vector<MeasurementGroup> out;
    for (auto& g : groups) {
        if (!g.term_indices.empty()) out.push_back(std::move(g));
    }
    return out;
}

void dump_hamiltonian_csv(const PauliSum& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write Hamiltonian CSV: " + path);
    out << "coefficient,label\n";
    char buf[32];
    for (const auto& t : h.terms) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
        out << buf << "," << t.label << "\n";
    }
}

}  // namespace kvqe
